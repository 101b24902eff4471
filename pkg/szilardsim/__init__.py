"""The szilardsim package
"""

__name__ = 'szilardsim'
__version__ = '0.1.0'
