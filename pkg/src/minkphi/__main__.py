import sys

from minkphi.cli import main

sys.exit(main())
