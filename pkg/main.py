#!/usr/bin/env python3
"""
Main entry point for defspace.
"""
import sys

from src.interface_adapters.cli import main

if __name__ == '__main__':
    sys.exit(main())
