import sys
from pathlib import Path

# make the test-only oracle helpers importable
sys.path.insert(0, str(Path(__file__).parent))
