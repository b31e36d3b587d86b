import sys

from aoi_ra.cli import main

sys.exit(main())
