#!/usr/bin/env python3
"""
qforge - Wrapper Script

This is a convenience wrapper to run the qforge package.

Usage:
    python run_qforge.py <command> <file> [options]

    python run_qforge.py hilbert s2.alg
    python run_qforge.py deform s2.alg --theta worked --json
    python run_qforge.py corpus

Files are looked up in the current directory first, then in the bundled
corpus.
"""

import sys
import os

# Add the parent directory to path if running directly
script_dir = os.path.dirname(os.path.abspath(__file__))
if script_dir not in sys.path:
    sys.path.insert(0, script_dir)

from qforge.main import main

if __name__ == "__main__":
    sys.exit(main())
