"""
Entry point for running gwvirasoro as a module.

Usage:
    python -m gwvirasoro check --model builtin:p1 --checks all
"""

import sys

from .cli import main

if __name__ == "__main__":
    sys.exit(main())
