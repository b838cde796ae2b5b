import sys

from lattice_workbench.cli import main

sys.exit(main())
