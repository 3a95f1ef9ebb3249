"""Pytest configuration and fixtures."""

import sys
from pathlib import Path

# Packages are imported as src.<package>, so the repository root goes on the path
root_path = Path(__file__).parent
sys.path.insert(0, str(root_path))
