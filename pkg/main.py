"""Fast-Polar - LUT and fixed-point unrolled polar decoders - Main Entry Point"""

import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(os.path.abspath(__file__)), "src"))

from fast_polar.cli import main, show_status  # noqa: E402

__all__ = ["main", "show_status"]


if __name__ == "__main__":
    sys.exit(main())
