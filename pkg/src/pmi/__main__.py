import sys

from pmi.cli import main

sys.exit(main())
