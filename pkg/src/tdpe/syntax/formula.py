"""Object-language types: atoms, the distinguished atom ``bot``, arrows and sums."""

from __future__ import annotations

from dataclasses import dataclass

BOT_NAME = "bot"


class Formula:
    __slots__ = ()

    def __str__(self) -> str:
        return show_formula(self)


@dataclass(frozen=True)
class Atom(Formula):
    name: str

    def __post_init__(self) -> None:
        if self.name == BOT_NAME:
            raise ValueError(f"atom name {BOT_NAME!r} is reserved")


@dataclass(frozen=True)
class Bot(Formula):
    pass


@dataclass(frozen=True)
class Arrow(Formula):
    dom: Formula
    cod: Formula


@dataclass(frozen=True)
class Sum(Formula):
    left: Formula
    right: Formula


BOT = Bot()


def is_atomic(a: Formula) -> bool:
    return isinstance(a, (Atom, Bot))


def arrows(*tys: Formula) -> Formula:
    """``arrows(a, b, c)`` is ``a -> b -> c``."""
    result = tys[-1]
    for ty in reversed(tys[:-1]):
        result = Arrow(ty, result)
    return result


# Precedence: 0 = arrow level, 1 = sum level, 2 = atomic.
def show_formula(a: Formula, prec: int = 0) -> str:
    match a:
        case Bot():
            return BOT_NAME
        case Atom(name):
            return name
        case Arrow(dom, cod):
            s = f"{show_formula(dom, 1)} -> {show_formula(cod, 0)}"
            return f"({s})" if prec > 0 else s
        case Sum(left, right):
            s = f"{show_formula(left, 2)} + {show_formula(right, 1)}"
            return f"({s})" if prec > 1 else s
    raise TypeError(f"not a formula: {a!r}")
