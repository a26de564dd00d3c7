from .base.datamodel import DataModel
from .core import StateEnsemble, StateVector, SolverSettings
from .linalg import dual_vectors
from .measurement import build_povm
from .optimization import grid_oracle, optimize
