import sys

from rotmorse.cli import main

sys.exit(main())
