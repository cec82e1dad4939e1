"""
ptwists - Main Entry Point

This is the main entry point for the ptwists command line.

Usage:
    python -m ptwists.main certify free --algebra two-object:2,2,1 --L 4
    or
    python ptwists/main.py spherify --algebra pnk:2,2
"""

import sys

from ptwists.view.cli import main as cli_main


def main(argv=None):
    """
    Main entry point for the ptwists command line.

    Parses the arguments, configures logging, runs the subcommand and
    maps its outcome to an exit status.

    Returns:
        int: 0 certified, 1 error, 2 certification failed, 3 undetermined
    """
    return cli_main(argv)


if __name__ == '__main__':
    sys.exit(main())
