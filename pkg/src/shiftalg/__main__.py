import sys

from shiftalg.cli import main

sys.exit(main())
