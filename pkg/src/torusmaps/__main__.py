import sys

from torusmaps.cli import main

sys.exit(main())
