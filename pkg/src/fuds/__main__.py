import sys

from fuds.cli import main

sys.exit(main())
