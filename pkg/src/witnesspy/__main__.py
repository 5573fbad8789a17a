"""Allow `python -m witnesspy`."""

import sys

from .cli import main

sys.exit(main())
