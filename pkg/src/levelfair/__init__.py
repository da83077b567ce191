"""Fair allocation of indivisible goods under additive leveled valuations."""

from levelfair.audit import (
    AuditReport,
    MmsResult,
    OracleBudget,
    OracleInfeasible,
    alpha_mms,
    audit,
    check_ef,
    check_efx,
    mms_value,
)
from levelfair.counterexample import FlawReport, reproduce_flaw, verify_bprime_is_mms
from levelfair.experiments import SweepConfig, TrialRecord, run_sweep
from levelfair.generator import GenConfig, counterexample_instance, gen_leveled, gen_nonleveled
from levelfair.instance import (
    Allocation,
    Instance,
    InputError,
    QuotaPlan,
    bundle_value,
    is_leveled,
    quota_plan,
    validate,
)
from levelfair.sdq import default_order, run_sdq

__all__ = [
    "Allocation", "AuditReport", "FlawReport", "GenConfig", "InputError", "Instance", "MmsResult",
    "OracleBudget", "OracleInfeasible", "QuotaPlan", "SweepConfig", "TrialRecord",
    "alpha_mms", "audit", "bundle_value", "check_ef", "check_efx", "counterexample_instance",
    "default_order", "gen_leveled", "gen_nonleveled", "is_leveled", "mms_value", "quota_plan",
    "reproduce_flaw", "run_sdq", "run_sweep", "validate", "verify_bprime_is_mms",
]
