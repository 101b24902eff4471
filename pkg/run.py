"""The szilardsim run script

Run ``python run.py table1`` to print the work-value table, or
``python run.py --help`` for every command.
"""
from szilardsim.cli import main


if __name__ == '__main__':
    main()
