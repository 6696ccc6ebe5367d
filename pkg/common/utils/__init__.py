from .common import *
from .unionfind import UnionFind
