"""Bus numbering for the generated Csound document.

Csound's zak patching system provides two independent bus matrices, one for
audio-rate and one for control-rate signals, while the source patch numbers
its cables in a single sequence; this module renumbers nets into the two
matrices. Bus 0 of each matrix is reserved as permanent silence (read by
inputs with no cable) and bus 1 as a trash collector (written by outputs with
no cable); driven nets get fresh buses from 2 upward.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .graph import DIR_IN, DIR_OUT, Endpoint, Net
from .moduledb import ModuleSpec, RATE_AUDIO
from .pch2 import ModuleInstance

SILENCE_BUS = 0
TRASH_BUS = 1
FIRST_FREE_BUS = 2


@dataclass
class BusMap:
    # Endpoint -> bus number within the endpoint's matrix.
    input_bus: dict[Endpoint, int] = field(default_factory=dict)
    output_bus: dict[Endpoint, int] = field(default_factory=dict)
    # Endpoint -> matrix ("a" or "k"), parallel to the maps above.
    input_rate: dict[Endpoint, str] = field(default_factory=dict)
    output_rate: dict[Endpoint, str] = field(default_factory=dict)
    audio_count: int = FIRST_FREE_BUS
    control_count: int = FIRST_FREE_BUS


def allocate(
    nets: list[Net],
    modules: list[ModuleInstance],
    specs: dict[int, ModuleSpec],
    assignment: dict[int, int],
) -> BusMap:
    """Assign zak buses to every jack of every module in one area.

    Driven nets are numbered in ascending (driver module index, driver jack)
    order, which makes the result independent of module and cable list order.
    ``assignment`` is the resolved type per module index from rate resolution.
    """
    busmap = BusMap()
    next_bus = {RATE_AUDIO: FIRST_FREE_BUS, "k": FIRST_FREE_BUS}

    driven = sorted(
        (net for net in nets if net.driver is not None),
        key=lambda net: (net.driver.module_index, net.driver.jack),
    )
    for net in driven:
        matrix = net.rate or "k"
        bus = next_bus[matrix]
        next_bus[matrix] += 1
        busmap.output_bus[net.driver] = bus
        busmap.output_rate[net.driver] = matrix
        for ep in net.inputs():
            busmap.input_bus[ep] = bus
            busmap.input_rate[ep] = matrix

    # Inputs on driverless nets read silence in their own declared matrix.
    for net in nets:
        if net.driver is None:
            for ep in net.inputs():
                rate = _jack_rate(ep, modules, specs, assignment)
                busmap.input_bus[ep] = SILENCE_BUS
                busmap.input_rate[ep] = rate

    # Jacks with no cable at all: silence for inputs, trash for outputs.
    for module in sorted(modules, key=lambda m: m.module_index):
        spec = specs.get(assignment.get(module.module_index, -1))
        if spec is None:
            continue
        for jack, rate in spec.inputs:
            ep = Endpoint(module.module_index, jack, DIR_IN)
            if ep not in busmap.input_bus:
                busmap.input_bus[ep] = SILENCE_BUS
                busmap.input_rate[ep] = rate
        for jack, rate in spec.outputs:
            ep = Endpoint(module.module_index, jack, DIR_OUT)
            if ep not in busmap.output_bus:
                busmap.output_bus[ep] = TRASH_BUS
                busmap.output_rate[ep] = rate

    busmap.audio_count = max(FIRST_FREE_BUS, next_bus[RATE_AUDIO])
    busmap.control_count = max(FIRST_FREE_BUS, next_bus["k"])
    return busmap


def _jack_rate(ep, modules, specs, assignment) -> str:
    for module in modules:
        if module.module_index == ep.module_index:
            spec = specs.get(assignment.get(module.module_index, -1))
            if spec is not None:
                rate = spec.input_rate(ep.jack)
                if rate is not None:
                    return rate
    return "k"
