# chasegate: semi-oblivious chase and termination deciders

__version__ = "0.1.0"
