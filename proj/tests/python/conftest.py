import glob
import os
import sys

# When running from the build tree (no installed wheel), pick up the package
# sources and the compiled _core module. CTest sets PYTHONPATH already; this
# covers manual `pytest tests/python` runs.
_root = os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
sys.path.insert(0, os.path.join(_root, "python"))
_build = os.environ.get("SUBALIGN_BUILD_DIR")
if _build:
    sys.path.insert(0, _build)
else:
    for candidate in sorted(glob.glob(os.path.join(_root, "build*"))):
        sys.path.insert(0, candidate)
