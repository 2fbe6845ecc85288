import sys

from star_src.cli import main


if __name__ == "__main__":
    sys.exit(main())
