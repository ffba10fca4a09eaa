import sys

from visipoly.cli import main

sys.exit(main())
