import sys

from cohfilt.cli import main

sys.exit(main())
