"""Plactic and grammic monoids: tableaux, row actions and rewriting."""

__version__ = "0.1.0"

from .words import Alphabet, Word, WordError, format_word, parikh, parse_word, project, words_of_length
from .tableau import (
    YoungTableau,
    build_tableau,
    column_insert,
    column_normal_form,
    plactic_eq,
    row_insert,
    row_normal_form,
)
from .rowaction import (
    Fingerprint,
    act_letter,
    act_word,
    affine_tail_check,
    bottom_row,
    grammic_eq_bounded,
    grammic_fingerprint,
    nonvanishing_threshold,
)
from .rewriting import (
    BudgetExceeded,
    Derivation,
    RewriteRule,
    RuleSet,
    candidate_rules4,
    derivation,
    grammic_rules3,
    knuth_rules,
    min_grammic_rule_count,
    neighbors,
    rewrite_eq,
)
from .threeletter import TableauParams, class_3_multiplicity, extract_params, grammic_eq3
