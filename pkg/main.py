"""Run the diproperm command line from a source checkout: python main.py <command> ..."""

import sys

from src.main import main

if __name__ == "__main__":
    sys.exit(main())
