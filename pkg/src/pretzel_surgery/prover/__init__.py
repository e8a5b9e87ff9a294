"""Certificate calculus for order facts about words acting on the line."""

from .judgments import BOT, Judgment, eq, mirror_judgment, neg, pos, pt
from .kernel import (RULES, Certificate, ProofScript, ProverContext, RuleError, ScriptError,
                     Step, apply_rule, check_script, recheck_certificate)
from .scripts import (builtin_script_fixedpoint, builtin_script_main, fixedpoint_script,
                      main_script, mirror)

__all__ = [
    "BOT", "Judgment", "eq", "mirror_judgment", "neg", "pos", "pt",
    "RULES", "Certificate", "ProofScript", "ProverContext", "RuleError", "ScriptError",
    "Step", "apply_rule", "check_script", "recheck_certificate",
    "builtin_script_fixedpoint", "builtin_script_main", "fixedpoint_script", "main_script",
    "mirror",
]
