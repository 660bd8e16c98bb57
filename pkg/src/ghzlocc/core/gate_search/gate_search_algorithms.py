from enum import Enum


class BuiltInGateSearch(str, Enum):
    """Gate-state searches included in ghzlocc"""

    REAL = "real"
    COMPLEX = "complex"
