"""
Coherence normal form and layer decomposition.

A term is flattened into a chain of layers. Each layer is a tensor of
boxes (non-structural generators or morphism variables) and identity
wires on single leaves. Associators, unitors and identities contribute
no layers, so two terms that differ only by coherence isomorphisms get the
same normal form.

Functions:
    normalize_coherence: Canonical strict representative of a term
    seq_factors: Split a term into sequential factors without dropping
        structural maps
"""

from typing import List

from src.terms import (Gen, Generator, Id, MorphVar, MorphismTerm, Par, Seq,
                       leaves, strictify, typecheck)

Layer = List[MorphismTerm]


def _wires(term: MorphismTerm) -> Layer:
    _, cod = typecheck(term)
    return [Id(leaf) for leaf in leaves(cod)]


def _layers(term: MorphismTerm) -> List[Layer]:
    if isinstance(term, Seq):
        return _layers(term.before) + _layers(term.after)
    if isinstance(term, Par):
        left, right = _layers(term.left), _layers(term.right)
        depth = max(len(left), len(right))
        left_pad, right_pad = _wires(term.left), _wires(term.right)
        # Bottom aligned: a side that finishes early idles on its codomain
        return [
            (left[i] if i < len(left) else left_pad)
            + (right[i] if i < len(right) else right_pad)
            for i in range(depth)
        ]
    if isinstance(term, Gen):
        generator = term.generator
        if generator.kind.is_structural:
            return []
        params = tuple(strictify(p) for p in generator.params)
        return [[Gen(Generator(generator.kind, params))]]
    if isinstance(term, MorphVar):
        return [[MorphVar(term.name, strictify(term.dom), strictify(term.cod))]]
    return []


def _tensor_items(items: Layer) -> MorphismTerm:
    result = items[-1]
    for item in reversed(items[:-1]):
        result = Par(item, result)
    return result


def normalize_coherence(term: MorphismTerm) -> MorphismTerm:
    """
    Compute the coherence normal form of a term.

    The result is a right-nested chain Seq(Ln, Seq(..., L1)) of layers, each
    a right-nested tensor of boxes and single-leaf identities. A term with
    no boxes normalizes to the identity on its strictified domain. The
    normal form typechecks under strict typing and normalizing it again
    returns it unchanged.

    Raises:
        TypeMismatch: If the term is ill typed even up to coherence
    """
    dom, _ = typecheck(term, strict=True)
    layers = _layers(term)
    if not layers:
        return Id(strictify(dom))
    result = _tensor_items(layers[0])
    for layer in layers[1:]:
        result = Seq(_tensor_items(layer), result)
    return result


def seq_factors(term: MorphismTerm) -> List[MorphismTerm]:
    """
    Split a term into sequential factors, first applied first.

    Tensor products of composites are interchanged bottom-aligned, padding
    the shorter side with identities on its codomain. Structural maps and
    identities are kept as factors of their own.
    """
    if isinstance(term, Seq):
        return seq_factors(term.before) + seq_factors(term.after)
    if isinstance(term, Par):
        left, right = seq_factors(term.left), seq_factors(term.right)
        if len(left) == 1 and len(right) == 1:
            return [term]
        left_id, right_id = Id(typecheck(term.left)[1]), Id(typecheck(term.right)[1])
        depth = max(len(left), len(right))
        return [
            Par(left[i] if i < len(left) else left_id,
                right[i] if i < len(right) else right_id)
            for i in range(depth)
        ]
    return [term]
