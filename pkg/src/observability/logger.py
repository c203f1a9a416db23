"""Structured logging with run correlation ids."""
import structlog
import logging
import sys
from typing import Optional
import uuid
from datetime import datetime

from src import config


class _StderrStream:
    """Resolves sys.stderr on every write, so redirected or replaced streams are honoured."""

    def write(self, text: str) -> int:
        return sys.stderr.write(text)

    def flush(self) -> None:
        sys.stderr.flush()


_STDERR = _StderrStream()


def setup_logging(log_level: str = config.LOG_LEVEL) -> None:
    """
    Configure structured JSON logging on stderr.

    Result files and stdout summaries stay free of log lines, which keeps
    search output byte-identical between runs.

    Args:
        log_level: Logging level (DEBUG, INFO, WARNING, ERROR)
    """
    level = logging.getLevelName(log_level.upper())
    if not isinstance(level, int):
        level = logging.WARNING

    structlog.configure(
        processors=[
            structlog.contextvars.merge_contextvars,
            structlog.processors.add_log_level,
            structlog.processors.TimeStamper(fmt="iso"),
            structlog.processors.StackInfoRenderer(),
            structlog.processors.format_exc_info,
            structlog.processors.JSONRenderer()
        ],
        wrapper_class=structlog.make_filtering_bound_logger(level),
        context_class=dict,
        logger_factory=structlog.PrintLoggerFactory(file=_STDERR),
        cache_logger_on_first_use=False,
    )


def get_logger(name: str, correlation_id: Optional[str] = None) -> structlog.BoundLogger:
    """
    Get a logger instance with optional correlation ID.

    Args:
        name: Logger name (usually __name__)
        correlation_id: Optional run id to bind

    Returns:
        Configured structlog logger
    """
    logger = structlog.get_logger(name)

    if correlation_id:
        logger = logger.bind(correlation_id=correlation_id)

    return logger


def generate_correlation_id() -> str:
    """
    Generate a unique id for one CLI run.

    Returns:
        UUID-based correlation ID
    """
    return f"run_{uuid.uuid4().hex[:12]}_{int(datetime.now().timestamp())}"


class LoggerMixin:
    """
    Mixin that gives a service class its own correlated logger.

    Usage:
        class SearchOrchestrator(LoggerMixin):
            def __init__(self):
                super().__init__()
                self.logger.info("orchestrator_initialized")
    """

    def __init__(self, *args, correlation_id: Optional[str] = None, **kwargs):
        super().__init__(*args, **kwargs)
        self._correlation_id = correlation_id or generate_correlation_id()
        self.logger = get_logger(
            self.__class__.__name__,
            correlation_id=self._correlation_id
        )

    @property
    def correlation_id(self) -> str:
        """Get the correlation ID for this instance."""
        return self._correlation_id


# Initialize logging on module import
setup_logging()
