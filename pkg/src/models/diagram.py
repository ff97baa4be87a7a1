"""
Data models for finite diagrams of finite-dimensional commutative C*-algebras.

Objects are described by their spectra and morphisms by spectrum maps, which
run contravariantly: a morphism J -> J' carries a map Spec D(J') -> Spec D(J).
"""

from dataclasses import dataclass

from src.models.errors import DiagramError


@dataclass(frozen=True)
class DiagramObject:
    """Object J with spectrum spec D(J)."""
    name: str
    points: tuple[str, ...]


@dataclass(frozen=True)
class Morphism:
    """Morphism f : J -> J' given by spectrum_map : spec D(J') -> spec D(J)."""
    name: str
    source: str
    target: str
    spectrum_map: tuple[tuple[str, str], ...]

    @property
    def mapping(self) -> dict[str, str]:
        return dict(self.spectrum_map)

    def is_identity(self) -> bool:
        return self.source == self.target and all(a == b for a, b in self.spectrum_map)


@dataclass(frozen=True)
class DiagramPresentation:
    """Finite category with finite-spectrum objects, identities included."""
    objects: tuple[DiagramObject, ...]
    morphisms: tuple[Morphism, ...]

    def __post_init__(self) -> None:
        names = [obj.name for obj in self.objects]
        if len(set(names)) != len(names):
            raise DiagramError("object names must be distinct")
        spectra = {obj.name: obj.points for obj in self.objects}
        for obj in self.objects:
            if len(set(obj.points)) != len(obj.points):
                raise DiagramError(f"object {obj.name} repeats a point")
        for morphism in self.morphisms:
            for end in (morphism.source, morphism.target):
                if end not in spectra:
                    raise DiagramError(f"morphism {morphism.name} references unknown object {end}")
            mapping = morphism.mapping
            target_points = set(spectra[morphism.target])
            source_points = set(spectra[morphism.source])
            if set(mapping) != target_points:
                missing = sorted(target_points - set(mapping))
                raise DiagramError(
                    f"spectrum map of {morphism.name} is not total on {morphism.target}"
                    + (f" (missing {', '.join(missing)})" if missing else "")
                )
            bad = sorted(set(mapping.values()) - source_points)
            if bad:
                raise DiagramError(
                    f"spectrum map of {morphism.name} hits unknown points of "
                    f"{morphism.source}: {', '.join(bad)}"
                )

    def spectrum(self, name: str) -> tuple[str, ...]:
        for obj in self.objects:
            if obj.name == name:
                return obj.points
        raise DiagramError(f"unknown object {name}")

    def with_identities(self) -> "DiagramPresentation":
        """Add an identity morphism for every object that lacks one."""
        covered = {m.source for m in self.morphisms if m.is_identity()}
        extra = tuple(
            Morphism(
                name=f"id_{obj.name}",
                source=obj.name,
                target=obj.name,
                spectrum_map=tuple((p, p) for p in obj.points),
            )
            for obj in self.objects
            if obj.name not in covered
        )
        return DiagramPresentation(self.objects, self.morphisms + extra)
