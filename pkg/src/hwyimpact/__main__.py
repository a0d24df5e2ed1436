"""Allow running as `python -m hwyimpact`."""

from hwyimpact.cli import main

main()
