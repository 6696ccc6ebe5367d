from .csv import *
from .json import *
