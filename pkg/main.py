import sys

from wiener_hopf.cli import main

if __name__ == "__main__":
    sys.exit(main())
