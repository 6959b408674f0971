"""Entry point for ``python -m mixmeas``."""

import sys

from .cli import main

sys.exit(main())
