import os
import sys

# The built extension lives in the CMake build tree during development; the
# test runner passes its directory through RELSMOOTH_MODULE_DIR.
module_dir = os.environ.get("RELSMOOTH_MODULE_DIR")
if module_dir and module_dir not in sys.path:
    sys.path.insert(0, module_dir)
