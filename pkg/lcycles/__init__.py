"""lcycles - bounded-length simple cycle enumeration with lock-based search"""

__version__ = "1.0.0"
