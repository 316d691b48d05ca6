"""Node kinds of the flattened sentence plans run by the evaluation kernels.

Terms evaluate to element indices, formulas to booleans.  Binary nodes use
operands ``a`` and ``b``; quantifier nodes store the variable slot in ``a``
and the body in ``b``.  The compiled core hard-codes the same numbers.
"""

VAR = 0
CONST = 1
MEET = 2
JOIN = 3
EQ = 4
NEQ = 5
NOT = 6
AND = 7
OR = 8
IMPLIES = 9
FORALL = 10
EXISTS = 11
TRUE = 12
FALSE = 13

NAMES = {
    VAR: "var", CONST: "const", MEET: "meet", JOIN: "join", EQ: "eq",
    NEQ: "neq", NOT: "not", AND: "and", OR: "or", IMPLIES: "implies",
    FORALL: "forall", EXISTS: "exists", TRUE: "true", FALSE: "false",
}
