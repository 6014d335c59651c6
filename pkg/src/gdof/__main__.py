import sys

from gdof.cli import main

sys.exit(main())
