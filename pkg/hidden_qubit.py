#!/usr/bin/env python3
"""
Entry point for hidden-qubit when run directly.

This module provides a simple entry point that calls the main function.
"""

import sys

from hidden_qubit.main import main

if __name__ == "__main__":
    sys.exit(main())
