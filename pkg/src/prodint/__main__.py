import sys

from prodint.cli import main

sys.exit(main())
