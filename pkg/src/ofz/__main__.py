import sys

from ofz.cli import main

sys.exit(main())
