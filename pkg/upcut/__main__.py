import sys

if sys.version_info < (3, 11):
    print(f"{__package__} requires at least Python 3.11!")
    sys.exit(1)

from .main import run_cli

if __name__ == "__main__":
    sys.exit(run_cli(sys.argv[1:]))
