import sys

from parcont.cli import main

sys.exit(main())
