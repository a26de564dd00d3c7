from .statevector import StateVector
from .stateensemble import StateEnsemble
from .gramdata import GramData
from .dualsystem import DualSystem
from .canonicalform import CanonicalForm, CanonicalParameters
from .coefficientvector import CoefficientVector
from .povmelement import PovmElement
from .povmset import PovmSet
from .feasibilitywitness import FeasibilityWitness
from .outcomeprobabilities import OutcomeProbabilities
from .gainweights import GainWeights
from .solution import Solution
from .surfacesample import SurfaceSample
from .spectraloutcome import SpectralOutcome
from .posteriorreport import PosteriorReport
from .simulationconfig import SimulationConfig
from .simulationreport import SimulationReport
from .problemfile import ProblemFile
from .solutionfile import Diagnostics, SolutionFile
from .solversettings import SolverSettings

__doc__ = "Data model of unambiguous discrimination problems, measurements and reports."

__all__ = [
    "StateVector",
    "StateEnsemble",
    "GramData",
    "DualSystem",
    "CanonicalForm",
    "CanonicalParameters",
    "CoefficientVector",
    "PovmElement",
    "PovmSet",
    "FeasibilityWitness",
    "OutcomeProbabilities",
    "GainWeights",
    "Solution",
    "SurfaceSample",
    "SpectralOutcome",
    "PosteriorReport",
    "SimulationConfig",
    "SimulationReport",
    "ProblemFile",
    "Diagnostics",
    "SolutionFile",
    "SolverSettings",
]
