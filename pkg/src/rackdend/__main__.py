import sys

from rackdend.cli import main

sys.exit(main())
