import logging
from typing import Callable, Dict


logger = logging.getLogger(__name__)

CONDITION_REGISTRY: Dict[str, Callable] = {}


def register_condition(condition_id):
    """
    Register a condition check under its ConditionId.
    Example:
        @register_condition(ConditionId.C3_CONNECTIVITY)
        def check_c3_connectivity(g, n=None): ...
    """

    def decorator(fn: Callable) -> Callable:
        if condition_id in CONDITION_REGISTRY:
            raise ValueError(f"Condition {condition_id} is already registered by {CONDITION_REGISTRY[condition_id].__name__}")
        logger.debug("Registering condition: %s", condition_id)
        CONDITION_REGISTRY[condition_id] = fn
        return fn

    return decorator
