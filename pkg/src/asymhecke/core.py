"""One cached bundle of computed objects per Cartan type."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache

from .cells import CellPartition, cell_partition
from .coxeter import DEFAULT_CAP, CoxeterGroup, build_group
from .jalg import JAlgebra
from .kl import KazhdanLusztig
from .specialrep import SpecialRep

__all__ = ["Context", "context"]


@dataclass
class Context:
    group: CoxeterGroup

    @cached_property
    def kl(self) -> KazhdanLusztig:
        return KazhdanLusztig(self.group)

    @cached_property
    def cells(self) -> CellPartition:
        return cell_partition(self.kl)

    @cached_property
    def jalg(self) -> JAlgebra:
        return JAlgebra(self.cells)

    @cached_property
    def special(self) -> SpecialRep:
        return SpecialRep(self.jalg)


@lru_cache(maxsize=16)
def context(label: str, cap: int = DEFAULT_CAP) -> Context:
    return Context(build_group(label, cap))
