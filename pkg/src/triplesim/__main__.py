import sys

from triplesim.cli import main

sys.exit(main())
