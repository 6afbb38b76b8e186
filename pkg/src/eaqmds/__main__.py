import sys

from eaqmds.cli import main

sys.exit(main())
