import sys

from fvectortools.cli import main


sys.exit(main())
