#!/usr/bin/env python3
"""Run the acceptance suite and show its per-criterion PASS/FAIL lines."""

import sys
from pathlib import Path

import pytest

root = Path(__file__).resolve().parent.parent
sys.exit(pytest.main(["-q", "-s", str(root / "tests" / "test_acceptance.py")]))
