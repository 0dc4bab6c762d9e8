"""
Differential objects and the cartesian-differential derivative.

A differential object is a carrier D with a commutative monoid (σ, ζ) and a
projection p̂: T(D) → D such that ⟨p, p̂⟩: T(D) → D × D is invertible and the
four compatibility equations with the vertical lift hold. All checks run
against any action whose category is cartesian; the shipped carrier is ℕ^k
in the ℕ-module instance.
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict, Optional

from ...core.errors import InputError
from ...schemas.reports import LawReport
from ..weil.generators import DELTA, EPSILON, W
from .engine import CartesianCategory, LawRecorder, WeilAction
from .nmod import NModAction, NModMorphism, NModObject, nmod_action

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DiffObject:
    carrier: Any
    sigma: Any  # D × D → D
    zeta: Any  # * → D
    phat: Any  # T(D) → D


def canonical_diffobj(rank: int = 1, action: Optional[NModAction] = None) -> DiffObject:
    """ℕ^k with σ = [I I], ζ = 0 and p̂ = [0 I] on the basis (1·e, x·e) of T(ℕ^k)."""
    action = action or nmod_action()
    cat = action.category
    carrier = NModObject(rank)
    ident = cat.identity(carrier)
    sigma = cat.add(*cat.projections(carrier, carrier))
    zeta = cat.zero(cat.terminal(), carrier)
    tangent = action.act_obj(W, carrier)
    phat = NModMorphism(tangent, carrier, [[0] * rank + list(row) for row in ident.rows()])
    return DiffObject(carrier, sigma, zeta, phat)


def projection(action: WeilAction, d: DiffObject) -> Any:
    """p = T^ε at the carrier."""
    return action.act_mor(EPSILON, d.carrier)


def coordinates(action: WeilAction, d: DiffObject) -> Any:
    """⟨p, p̂⟩: T(D) → D × D."""
    return action.category.pair(projection(action, d), d.phat)


def _cartesian(action: WeilAction) -> CartesianCategory:
    if not isinstance(action.category, CartesianCategory):
        raise InputError(f"category of {action.name} has no cartesian structure")
    return action.category


def check_diffobj(d: DiffObject, action: Optional[WeilAction] = None) -> LawReport:
    action = action or nmod_action()
    cat = _cartesian(action)
    rec = LawRecorder(f"diffobj {action.name}", cat.encode_morphism)
    carrier = d.carrier
    one = cat.identity(carrier)
    p = projection(action, d)
    with rec.guard("pair.invertible"):
        try:
            cat.inverse(coordinates(action, d))
            rec.require("pair.invertible", True, "")
        except InputError as exc:
            rec.require("pair.invertible", False, f"<p, p^> is not invertible: {exc.message}")

    bang = cat.bang(carrier)
    zeta_bang = cat.compose(d.zeta, bang)
    first, second = cat.projections(carrier, carrier)
    with rec.guard("monoid.unit.left"):
        rec.check("monoid.unit.left", cat.compose(d.sigma, cat.pair(zeta_bang, one)), one)
    with rec.guard("monoid.unit.right"):
        rec.check("monoid.unit.right", cat.compose(d.sigma, cat.pair(one, zeta_bang)), one)
    with rec.guard("monoid.associativity"):
        # products concatenate bases, so (D×D)×D and D×(D×D) are the same object
        rec.check(
            "monoid.associativity",
            cat.compose(d.sigma, cat.product_mor(d.sigma, one)),
            cat.compose(d.sigma, cat.product_mor(one, d.sigma)),
        )
    with rec.guard("monoid.commutativity"):
        rec.check("monoid.commutativity", cat.compose(d.sigma, cat.pair(second, first)), d.sigma)

    tangent = action.act_obj(W, carrier)
    lift = action.act_mor(DELTA, carrier)
    t_p = action.act_fun(W, p)
    t_phat = action.act_fun(W, d.phat)
    zeta_bang_t = cat.compose(d.zeta, cat.bang(tangent))
    with rec.guard("pT(p)l = p"):
        rec.check("pT(p)l = p", cat.compose(p, cat.compose(t_p, lift)), p)
    with rec.guard("p^T(p)l = zeta!"):
        rec.check("p^T(p)l = zeta!", cat.compose(d.phat, cat.compose(t_p, lift)), zeta_bang_t)
    with rec.guard("pT(p^)l = zeta!"):
        rec.check("pT(p^)l = zeta!", cat.compose(p, cat.compose(t_phat, lift)), zeta_bang_t)
    with rec.guard("p^T(p^)l = p^"):
        rec.check("p^T(p^)l = p^", cat.compose(d.phat, cat.compose(t_phat, lift)), d.phat)
    report = rec.report()
    logger.info(
        "check_diffobj instance=%s carrier=%s passed=%s failures=%s",
        action.name, cat.describe_object(carrier), report.passed, len(report.failures),
    )
    return report


def check_diffobj_morphism(f: Any, d_src: DiffObject, d_tgt: DiffObject, action: Optional[WeilAction] = None) -> LawReport:
    """f: D → D′ preserves σ, ζ and p̂."""
    action = action or nmod_action()
    cat = _cartesian(action)
    rec = LawRecorder(f"diffobj-morphism {action.name}", cat.encode_morphism)
    with rec.guard("morphism.sigma"):
        rec.check(
            "morphism.sigma",
            cat.compose(f, d_src.sigma),
            cat.compose(d_tgt.sigma, cat.product_mor(f, f)),
        )
    with rec.guard("morphism.zeta"):
        rec.check("morphism.zeta", cat.compose(f, d_src.zeta), d_tgt.zeta)
    with rec.guard("morphism.phat"):
        rec.check(
            "morphism.phat",
            cat.compose(f, d_src.phat),
            cat.compose(d_tgt.phat, action.act_fun(W, f)),
        )
    return rec.report()


def derivative(f: Any, d_src: DiffObject, d_tgt: DiffObject, action: Optional[WeilAction] = None) -> Any:
    """∇(f) = p̂_B ∘ T(f) ∘ ⟨p_A, p̂_A⟩⁻¹ : D_A × D_A → D_B, coordinates (point, direction)."""
    action = action or nmod_action()
    cat = _cartesian(action)
    if cat.source(f) != d_src.carrier or cat.target(f) != d_tgt.carrier:
        raise InputError("derivative: map endpoints are not the carriers of the differential objects")
    inverse = cat.inverse(coordinates(action, d_src))
    return cat.compose(d_tgt.phat, cat.compose(action.act_fun(W, f), inverse))


def check_derivative_laws(
    f: Any,
    g: Any,
    d_a: DiffObject,
    d_b: DiffObject,
    d_c: DiffObject,
    h: Optional[Any] = None,
    action: Optional[WeilAction] = None,
) -> LawReport:
    """
    f, h: A → B and g: B → C. Checks the projection identity, additivity in the
    map, linearity, vanishing along zero directions and the chain rule
    ∇(g∘f) = ∇(g) ∘ ⟨f∘π₁, ∇(f)⟩.
    """
    action = action or nmod_action()
    cat = _cartesian(action)
    rec = LawRecorder(f"derivative {action.name}", cat.encode_morphism)
    a, b = d_a.carrier, d_b.carrier
    h = h if h is not None else cat.zero(a, b)
    first, second = cat.projections(a, a)
    nabla_f = derivative(f, d_a, d_b, action)

    with rec.guard("derivative.identity"):
        rec.check("derivative.identity", derivative(cat.identity(a), d_a, d_a, action), second)
    with rec.guard("derivative.additive"):
        rec.check(
            "derivative.additive",
            derivative(cat.add(f, h), d_a, d_b, action),
            cat.add(nabla_f, derivative(h, d_a, d_b, action)),
        )
    with rec.guard("derivative.linear"):
        rec.check("derivative.linear", nabla_f, cat.compose(f, second))
    with rec.guard("derivative.zero_direction"):
        along_zero = cat.pair(cat.identity(a), cat.compose(d_a.zeta, cat.bang(a)))
        rec.check("derivative.zero_direction", cat.compose(nabla_f, along_zero), cat.zero(a, b))
    with rec.guard("derivative.chain_rule"):
        rec.check(
            "derivative.chain_rule",
            derivative(cat.compose(g, f), d_a, d_c, action),
            cat.compose(derivative(g, d_b, d_c, action), cat.pair(cat.compose(f, first), nabla_f)),
        )
    return rec.report()


def corrupted_diffobj(phat_rows, rank: int = 1) -> DiffObject:
    """The canonical differential object on ℕ^rank with p̂ replaced."""
    d = canonical_diffobj(rank)
    return DiffObject(d.carrier, d.sigma, d.zeta, NModMorphism(d.phat.source, d.carrier, phat_rows))


def describe(d: DiffObject, action: Optional[WeilAction] = None) -> Dict[str, Any]:
    action = action or nmod_action()
    cat = action.category
    return {
        "carrier": cat.describe_object(d.carrier),
        "sigma": cat.encode_morphism(d.sigma),
        "zeta": cat.encode_morphism(d.zeta),
        "phat": cat.encode_morphism(d.phat),
        "p": cat.encode_morphism(projection(action, d)),
    }
