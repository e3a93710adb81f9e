from .model import (
    Classification,
    Finding,
    Rule,
    RuleSet,
    classify,
    load_ruleset,
    priority_color,
    rank_band,
)
from .rules import RULES, RuleContext, rule_by_id, run_rules
from .clones import ClonePair, find_duplicates

__all__ = [
    "Classification",
    "Finding",
    "Rule",
    "RuleSet",
    "classify",
    "load_ruleset",
    "priority_color",
    "rank_band",
    "RULES",
    "RuleContext",
    "rule_by_id",
    "run_rules",
    "ClonePair",
    "find_duplicates",
]
