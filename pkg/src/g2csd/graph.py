"""Signal-net resolution for a patch area.

Cables are undirected edges between module jacks; a net is a connected
component of jack endpoints. A cable may join an output to an input or two
inputs to each other; in the latter case both inputs receive whatever output
feeds their shared net, so nets are built ignoring cable direction and color.
A valid net has at most one output endpoint, which drives it.

Signal rates are then resolved: a driven net runs at its driver jack's rate,
and polymorphic module types switch to their audio-rate twin when any of
their inputs sees an audio net. Because a twin swap can change rates further
downstream, resolution iterates to a fixed point.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import MultipleDrivers, NonConvergence, UnknownJack
from .moduledb import ModuleDb, ModuleSpec, RATE_AUDIO, RATE_CONTROL
from .pch2 import Cable, LINK_OUT_TO_IN, ModuleInstance, Pch2Patch

DIR_IN = "in"
DIR_OUT = "out"


@dataclass(frozen=True)
class Endpoint:
    module_index: int
    jack: int
    direction: str


@dataclass
class Net:
    endpoints: frozenset[Endpoint]
    driver: Endpoint | None = None
    rate: str | None = None

    def inputs(self) -> list[Endpoint]:
        return sorted(
            (e for e in self.endpoints if e.direction == DIR_IN),
            key=lambda e: (e.module_index, e.jack),
        )


@dataclass
class Diagnostic:
    kind: str
    area: str
    message: str

    def __str__(self) -> str:
        return "[%s] %s: %s" % (self.area, self.kind, self.message)


class _UnionFind:
    def __init__(self):
        self.parent: dict = {}

    def find(self, k):
        self.parent.setdefault(k, k)
        root = k
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[k] != root:
            self.parent[k], k = root, self.parent[k]
        return root

    def union(self, a, b):
        self.parent[self.find(b)] = self.find(a)


def cable_endpoints(cable: Cable) -> tuple[Endpoint, Endpoint]:
    """The two jack endpoints a cable connects.

    The "from" end is an output only for an out-to-in cable; an in-to-in
    cable joins two inputs. The "to" end is always an input.
    """
    from_dir = DIR_OUT if cable.link_type == LINK_OUT_TO_IN else DIR_IN
    return (
        Endpoint(cable.module_from, cable.jack_from, from_dir),
        Endpoint(cable.module_to, cable.jack_to, DIR_IN),
    )


def _check_jack(ep: Endpoint, spec: ModuleSpec | None) -> str | None:
    """Returns an error message if the endpoint's jack is not in the spec."""
    if spec is None:
        return None  # unknown module type is reported separately
    rate = spec.input_rate(ep.jack) if ep.direction == DIR_IN else spec.output_rate(ep.jack)
    if rate is None:
        return "module %d (%s) has no %s jack %d" % (
            ep.module_index, spec.name, ep.direction, ep.jack)
    return None


def build_nets(
    modules: list[ModuleInstance],
    cables: list[Cable],
    specs: dict[int, ModuleSpec],
    diagnostics: list[Diagnostic] | None = None,
    area: str = "va",
) -> list[Net]:
    """Group cable endpoints into nets and find each net's driving output.

    With ``diagnostics`` given, problems are recorded there and resolution
    continues (keeping the first driver of an over-driven net); otherwise the
    first problem raises.
    """
    type_of = {m.module_index: m.module_type for m in modules}
    uf = _UnionFind()
    endpoints: set[Endpoint] = set()
    for cable in cables:
        a, b = cable_endpoints(cable)
        for ep in (a, b):
            problem = _check_jack(ep, specs.get(type_of.get(ep.module_index, -1)))
            if problem is not None:
                if diagnostics is None:
                    raise UnknownJack(ep.module_index, ep.jack, ep.direction)
                diagnostics.append(Diagnostic("unknown-jack", area, problem))
        endpoints.update((a, b))
        uf.union(a, b)

    groups: dict[Endpoint, set[Endpoint]] = {}
    for ep in endpoints:
        groups.setdefault(uf.find(ep), set()).add(ep)

    nets = []
    for members in groups.values():
        drivers = sorted(
            (e for e in members if e.direction == DIR_OUT),
            key=lambda e: (e.module_index, e.jack),
        )
        if len(drivers) > 1:
            if diagnostics is None:
                raise MultipleDrivers(drivers)
            diagnostics.append(
                Diagnostic(
                    "multiple-drivers",
                    area,
                    "outputs %s feed one net"
                    % (sorted((e.module_index, e.jack) for e in drivers),),
                )
            )
        nets.append(Net(endpoints=frozenset(members), driver=drivers[0] if drivers else None))
    # Canonical order, independent of module/cable list order.
    nets.sort(key=lambda n: min((e.module_index, e.jack, e.direction) for e in n.endpoints))
    return nets


def resolve_rates(
    nets: list[Net],
    modules: list[ModuleInstance],
    specs: dict[int, ModuleSpec],
) -> dict[int, int]:
    """Assign a rate to every net and pick rate twins for polymorphic modules.

    Returns the module_index -> resolved type id assignment and sets
    ``net.rate`` in place. Twin swaps only ever move a module from control to
    audio, so the iteration converges in at most one pass per module.
    """
    assignment = {m.module_index: m.module_type for m in modules}
    inputs_of: dict[int, list[Net]] = {}
    for net in nets:
        for ep in net.endpoints:
            if ep.direction == DIR_IN:
                inputs_of.setdefault(ep.module_index, []).append(net)

    for _ in range(len(modules) + 1):
        for net in nets:
            if net.driver is None:
                net.rate = RATE_CONTROL
                continue
            spec = specs.get(assignment.get(net.driver.module_index, -1))
            rate = spec.output_rate(net.driver.jack) if spec else None
            net.rate = rate if rate is not None else RATE_CONTROL
        changed = False
        for module in modules:
            spec = specs.get(assignment[module.module_index])
            if spec is None or spec.twin_type_id is None:
                continue
            if spec.default_rate == RATE_AUDIO:
                continue  # already the audio-rate variant; never downgrade
            if any(
                net.rate == RATE_AUDIO
                for net in inputs_of.get(module.module_index, [])
            ):
                assignment[module.module_index] = spec.twin_type_id
                changed = True
        if not changed:
            return assignment
    raise NonConvergence("rate resolution did not reach a fixed point")


def validate_graph(patch: Pch2Patch, db: ModuleDb) -> list[Diagnostic]:
    """All structural problems of a patch against a module library.

    Never raises; an empty result means the patch is convertible as far as
    the graph is concerned.
    """
    diagnostics: list[Diagnostic] = []
    for area in ("va", "fx"):
        modules = patch.modules(area)
        known_indices = {m.module_index for m in modules}
        for module in modules:
            if module.module_type not in db.specs:
                diagnostics.append(
                    Diagnostic(
                        "unknown-module-type",
                        area,
                        "module %d has unknown type %d"
                        % (module.module_index, module.module_type),
                    )
                )
        build_nets(modules, patch.cables(area), db.specs, diagnostics, area)
        for block in patch.params(area):
            if block.module_index not in known_indices:
                diagnostics.append(
                    Diagnostic(
                        "dangling-parameter-block",
                        area,
                        "parameters for missing module %d" % block.module_index,
                    )
                )
                continue
            module = next(m for m in modules if m.module_index == block.module_index)
            spec = db.specs.get(module.module_type)
            if spec is not None and len(block.values) != len(spec.params):
                diagnostics.append(
                    Diagnostic(
                        "param-count-mismatch",
                        area,
                        "module %d (%s) stores %d parameters, spec expects %d"
                        % (
                            block.module_index,
                            spec.name,
                            len(block.values),
                            len(spec.params),
                        ),
                    )
                )
    return diagnostics
