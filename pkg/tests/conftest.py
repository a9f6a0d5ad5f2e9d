import os
import sys

# keep test runs out of the trace file
os.environ.setdefault("QMAT_TRACE", "0")

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))
