from .frontend.cli import main
import sys

sys.exit(main())
