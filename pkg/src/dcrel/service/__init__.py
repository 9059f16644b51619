from .app import GATE_TOLERANCE, create_app, evaluate_gate

__all__ = ["GATE_TOLERANCE", "create_app", "evaluate_gate"]
