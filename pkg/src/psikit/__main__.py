from psikit.cli import main
import sys

sys.exit(main())
