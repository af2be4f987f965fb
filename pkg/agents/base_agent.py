"""
Base Agent Class
Shared plumbing for the scan, classifier and quality agents.
"""

from typing import Any, Dict, Optional, Sequence
from loguru import logger
from datetime import datetime

import sys
from pathlib import Path
sys.path.insert(0, str(Path(__file__).parent.parent))

from exceptions import BMGError, PreconditionError


class BaseAgent:
    """
    Base class for the pipeline agents.

    Activity is logged through loguru with the agent name bound as extras, so a
    sink can filter per agent. Errors become records carrying the CLI exit code.
    """

    def __init__(self, config: Optional[Dict[str, Any]] = None):
        self.config = config or {}
        self.logger = logger
        self.agent_name = self.__class__.__name__

    def log_activity(self, action: str, data: Optional[Dict] = None):
        """Log one pipeline step, e.g. a started or finished scan, with its parameters."""
        log_data = {
            "agent": self.agent_name,
            "action": action,
            "timestamp": datetime.now().isoformat()
        }
        if data:
            log_data.update(data)

        self.logger.bind(**log_data).info(f"[{self.agent_name}] {action}")

    def handle_error(self, error: Exception, context: Optional[str] = None) -> Dict[str, Any]:
        """
        Log an error and describe it for reports.

        bmg_lab errors keep their own exit code; anything else maps to 1.
        """
        error_msg = str(error)
        if isinstance(error, BMGError):
            self.logger.warning(f"[{self.agent_name}] {type(error).__name__} in {context or 'agent'}: {error_msg}")
        else:
            self.logger.opt(exception=error).error(f"[{self.agent_name}] Unexpected error: {error_msg}")

        return {
            "error": True,
            "error_message": error_msg,
            "error_type": type(error).__name__,
            "exit_code": getattr(error, "exit_code", 1),
            "agent": self.agent_name,
            "context": context,
            "timestamp": datetime.now().isoformat()
        }

    async def execute(self, input_data: Dict[str, Any]) -> Dict[str, Any]:
        """Run the agent's step on one request."""
        raise NotImplementedError("Subclasses must implement execute method")

    def require_fields(self, input_data: Dict[str, Any], required_fields: Sequence[str]) -> None:
        """PreconditionError naming every missing request field."""
        missing_fields = [field for field in required_fields if field not in input_data]
        if missing_fields:
            raise PreconditionError(f"{self.agent_name} request is missing: {', '.join(missing_fields)}")
