"""OpenTelemetry spans around the coarse search, verification and rendering steps."""
from opentelemetry import trace
from opentelemetry.sdk.trace import TracerProvider
from opentelemetry.sdk.trace.export import ConsoleSpanExporter, SimpleSpanProcessor
from opentelemetry.sdk.resources import Resource
from typing import Optional
import asyncio
import functools
import time

from src import config


_tracer_provider: Optional[TracerProvider] = None
_tracer: Optional[trace.Tracer] = None


def setup_tracing(
    service_name: str = "lattice-schlicht",
    enable_console: bool = config.ENABLE_TRACING
) -> None:
    """
    Initialize the tracer provider.

    Spans are always created so attributes can be inspected in tests; they
    are only exported to the console when tracing is enabled.

    Args:
        service_name: Name of the service for trace identification
        enable_console: Attach a console span exporter
    """
    global _tracer_provider, _tracer

    resource = Resource.create({"service.name": service_name})
    _tracer_provider = TracerProvider(resource=resource)

    if enable_console:
        _tracer_provider.add_span_processor(SimpleSpanProcessor(ConsoleSpanExporter()))

    _tracer = _tracer_provider.get_tracer(__name__)


def get_tracer() -> trace.Tracer:
    """
    Get the global tracer instance.

    Returns:
        OpenTelemetry tracer
    """
    if _tracer is None:
        setup_tracing()

    return _tracer


def _record_outcome(span, func, start_time: float, error: Optional[BaseException]) -> None:
    span.set_attribute("function.name", func.__name__)
    span.set_attribute("function.module", func.__module__)
    if error is None:
        span.set_attribute("status", "success")
    else:
        span.set_attribute("status", "error")
        span.set_attribute("error.type", type(error).__name__)
        span.set_attribute("error.message", str(error))
        span.record_exception(error)
    span.set_attribute("duration_ms", (time.time() - start_time) * 1000)


def trace_function(span_name: Optional[str] = None):
    """
    Decorator to trace a sync or async function.

    Args:
        span_name: Optional custom span name (defaults to module.function)

    Usage:
        @trace_function("search")
        async def run_search(cfg):
            ...
    """
    def decorator(func):
        name = span_name or f"{func.__module__}.{func.__name__}"

        @functools.wraps(func)
        async def async_wrapper(*args, **kwargs):
            with get_tracer().start_as_current_span(name) as span:
                start_time = time.time()
                try:
                    result = await func(*args, **kwargs)
                except Exception as e:
                    _record_outcome(span, func, start_time, e)
                    raise
                _record_outcome(span, func, start_time, None)
                return result

        @functools.wraps(func)
        def sync_wrapper(*args, **kwargs):
            with get_tracer().start_as_current_span(name) as span:
                start_time = time.time()
                try:
                    result = func(*args, **kwargs)
                except Exception as e:
                    _record_outcome(span, func, start_time, e)
                    raise
                _record_outcome(span, func, start_time, None)
                return result

        if asyncio.iscoroutinefunction(func):
            return async_wrapper
        return sync_wrapper

    return decorator


# Initialize tracing on module import
setup_tracing()
