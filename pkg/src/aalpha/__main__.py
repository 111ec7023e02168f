import sys

from aalpha.cli import main

sys.exit(main())
