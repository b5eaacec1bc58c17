"""entrack: entanglement trajectories of simulated quantum algorithms.

A trajectory is the sequence of (largest Schmidt weight, entropy) pairs an
algorithm traces as it runs, checkpointed at structurally meaningful gates.
The library simulates the circuits, extracts reduced-spectrum measures at
each checkpoint, and compares the cloud of points against analytic
boundary curves, both the hard bounds every state obeys and the tighter
random-matrix curve that typical states hug.
"""

from . import boundaries, numerics, rmt, rng, scenarios, spectral, statevector

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "boundaries", "numerics", "rmt", "rng",
    "scenarios", "spectral", "statevector",
]
