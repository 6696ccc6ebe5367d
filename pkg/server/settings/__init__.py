from .base import *
from .logging import *
from .setting import *
