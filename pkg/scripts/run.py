#!/usr/bin/env python3
"""
Development runner for the lcycles CLI
"""

import sys
from pathlib import Path

# Repository root on the path so the package runs from a checkout
sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from lcycles.main import run

if __name__ == "__main__":
    run()
