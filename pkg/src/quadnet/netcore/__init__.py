from quadnet.netcore.kernel import OVERFLOW_GUARD, NetworkMap
from quadnet.netcore.network import MultiState, Network, OrbitRecord, check_node
from quadnet.netcore.orbits import iterate_orbit, node_orbit_bounded, step

__all__ = [
    "OVERFLOW_GUARD",
    "MultiState",
    "Network",
    "NetworkMap",
    "OrbitRecord",
    "check_node",
    "iterate_orbit",
    "node_orbit_bounded",
    "step",
]
