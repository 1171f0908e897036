"""Error taxonomy.

Every rejection path in the package raises one of these named errors; the
negative test suite pins the mapping from malformed input to error class.
"""


class HolsetError(Exception):
    """Base class for all package errors."""


class ParseError(HolsetError):
    """Malformed textual input (terms, formulas, proof files, traces, ADT decls)."""


class ArityError(HolsetError):
    """A symbol applied to the wrong number of arguments, or a rule given the
    wrong number of premises."""


class DuplicateSymbol(HolsetError):
    """A signature name is already taken with an incompatible role."""


class DuplicateName(HolsetError):
    """A named registry entry (lemma, ADT, definition) already exists."""


class DuplicateAdt(DuplicateName):
    """An ADT with this name was already compiled."""


class KernelError(HolsetError):
    """Violation of the kernel boundary (forging theorems, bad construction)."""


class RuleMismatch(KernelError):
    """A deduction rule applied to premises that do not fit its shape."""


class SchemaError(KernelError):
    """An axiom schema instantiated with parameters violating its side conditions."""


class JustificationShape(KernelError):
    """An extension-by-definition justification theorem of the wrong form."""


class UnknownAxiom(KernelError):
    """Reference to an axiom name the kernel does not know."""


class UnknownLemma(KernelError):
    """Reference to an admitted lemma or registry entry that does not exist."""


class ForwardReference(KernelError):
    """A proof step referring to a step id not yet introduced."""


class CheckFailure(KernelError):
    """A stored proof failed to replay."""


class IllTyped(HolsetError):
    """A HOL term or substitution violating the simple type discipline."""


class VariableTypeClash(IllTyped):
    """One variable name used at two types within a single sequent scope."""


class OpenTerm(HolsetError):
    """A term with free term variables where a closed one is required."""


class NotAlphaEquivalent(HolsetError):
    """Two terms expected to agree up to bound-variable renaming do not."""


class FreeVariableClash(HolsetError):
    """A binder or eigenvariable condition violated (variable occurs free
    where it must not)."""


class ShapeMismatch(HolsetError):
    """A term or formula lacks the syntactic shape an operation requires."""


class NonBooleanConclusion(HolsetError):
    """A HOL sequent member whose type is not bool."""


class NotEliminable(HolsetError):
    """Context cleanup hit an assumption it cannot discharge."""


class NotAnEmbeddingImage(HolsetError):
    """A first-order term that is not the substitution image of any embedded
    HOL term, so it cannot be canonicalized."""


class UnknownSymbol(HolsetError):
    """A constant name with no declared generic type."""


class UnknownTypeConstructor(HolsetError):
    """A HOL type constructor that names no compiled ADT."""


class InvalidSort(HolsetError):
    """An ADT constructor argument sort that is not a known type."""


class UnsupportedRule(HolsetError):
    """A trace record naming a deduction rule outside the supported set."""


class TraceFormatError(ParseError):
    """A trace record violating the line-format contract."""


class Infinite(HolsetError):
    """The evaluator was asked to enumerate an infinite set."""


class RankBudgetExceeded(HolsetError):
    """The evaluator exceeded its rank or cardinality budget."""


class UnsupportedSymbol(HolsetError):
    """The evaluator met a symbol it has no set-theoretic interpretation for."""
