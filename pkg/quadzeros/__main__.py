import sys

from quadzeros.cli import main

sys.exit(main())
