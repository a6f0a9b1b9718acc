import sys

from pezzo.cli import main

sys.exit(main())
