import os
import sys

# Make the sibling helpers module importable regardless of invocation dir.
sys.path.insert(0, os.path.dirname(__file__))
