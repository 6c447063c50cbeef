#!/usr/bin/env python3
"""
SIF - Sparse Symmetric Indefinite Factorization
Main entry point for the command line application
"""

import sys
import traceback
import warnings
from pathlib import Path

# Suppress deprecation chatter from the numerical stack
warnings.filterwarnings("ignore", category=DeprecationWarning)

# Setup path for imports
app_dir = Path(__file__).parent.resolve()
if str(app_dir) not in sys.path:
    sys.path.insert(0, str(app_dir))

# Import modules
from utils.i18n import _


def check_dependencies():
    """Check that numpy and scipy are importable"""
    try:
        import numpy  # noqa: F401
        import scipy.sparse  # noqa: F401
        return True
    except ImportError as e:
        print(_("Error: Required dependencies not found: {}").format(e), file=sys.stderr)
        print(_("Please install: numpy scipy"), file=sys.stderr)
        return False


def main(argv=None):
    """Main application entry point"""
    try:
        if not check_dependencies():
            return 1

        from application import SifApplication

        app = SifApplication()
        return app.run(sys.argv[1:] if argv is None else argv)

    except KeyboardInterrupt:
        print("\n" + _("Interrupted by user."), file=sys.stderr)
        return 130
    except Exception as e:
        print(_("Critical error: {}").format(e), file=sys.stderr)
        traceback.print_exc()
        return 1


if __name__ == "__main__":
    sys.exit(main())
