"""Test structured logging, tracing spans and the metrics collector."""
import io
import json
import sys
from pathlib import Path

import pytest
from opentelemetry.sdk.trace.export import SimpleSpanProcessor
from opentelemetry.sdk.trace.export.in_memory_span_exporter import InMemorySpanExporter

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.observability import tracer as tracer_module
from src.observability.logger import LoggerMixin, generate_correlation_id, get_logger, setup_logging
from src.observability.metrics import MetricsCollector, TimerContext, get_global_metrics
from src.observability.tracer import get_tracer, trace_function


@pytest.fixture
def spans():
    exporter = InMemorySpanExporter()
    tracer_module._tracer_provider.add_span_processor(SimpleSpanProcessor(exporter))
    return exporter


def test_logger_writes_json_to_stderr(capsys):
    """Test structured logging."""
    setup_logging("INFO")
    correlation_id = generate_correlation_id()
    assert correlation_id.startswith("run_")

    get_logger("test_logger", correlation_id=correlation_id).info("phase_completed", phase="unit")
    captured = capsys.readouterr()
    assert captured.out == ""
    event = json.loads(captured.err.strip().splitlines()[-1])
    assert event["event"] == "phase_completed"
    assert event["correlation_id"] == correlation_id
    assert event["level"] == "info"
    setup_logging("WARNING")


def test_logger_level_filters(capsys):
    """Test that INFO events are dropped at WARNING level."""
    setup_logging("WARNING")
    get_logger("quiet").info("hidden")
    assert capsys.readouterr().err == ""


def test_logger_follows_replaced_stderr(monkeypatch):
    """Test that logging survives a stderr stream closed after configuration."""
    replaced = io.StringIO()
    monkeypatch.setattr(sys, "stderr", replaced)
    setup_logging("WARNING")
    get_logger("redirect").warning("redirected")
    assert "redirected" in replaced.getvalue()

    monkeypatch.undo()
    replaced.close()
    get_logger("redirect").warning("after_close")


def test_logger_mixin():
    """Test correlation ids on service classes."""
    class Service(LoggerMixin):
        pass

    assert Service(correlation_id="run_fixed").correlation_id == "run_fixed"
    assert Service().correlation_id.startswith("run_")


def test_tracer():
    """Test span creation."""
    tracer = get_tracer()
    assert tracer is not None
    with tracer.start_as_current_span("test_span") as span:
        span.set_attribute("lattice", 2)


def test_trace_decorator_records_outcome(spans):
    """Test sync spans and their status attributes."""
    @trace_function("unit_operation")
    def succeed():
        return "success"

    @trace_function("unit_failure")
    def fail():
        raise ValueError("boom")

    assert succeed() == "success"
    with pytest.raises(ValueError):
        fail()

    finished = {s.name: s for s in spans.get_finished_spans()}
    assert finished["unit_operation"].attributes["status"] == "success"
    assert finished["unit_failure"].attributes["status"] == "error"
    assert finished["unit_failure"].attributes["error.type"] == "ValueError"


@pytest.mark.asyncio
async def test_trace_decorator_async(spans):
    """Test async spans."""
    @trace_function("unit_async")
    async def work(x):
        return x * 2

    assert await work(21) == 42
    assert "unit_async" in [s.name for s in spans.get_finished_spans()]


def test_metrics_collector():
    """Test counters and timers."""
    metrics = MetricsCollector()
    metrics.increment("search.prune.grunsky_psd", 5)
    metrics.increment("search.prune.grunsky_psd")
    metrics.record_duration("search.explore", 1.5)
    metrics.record_duration("search.explore", 0.5)

    summary = metrics.get_summary()
    assert summary["counters"]["search.prune.grunsky_psd"] == 6
    assert summary["timers"]["search.explore"]["count"] == 2
    assert summary["timers"]["search.explore"]["total"] == pytest.approx(2.0)

    metrics.reset()
    assert metrics.get_summary() == {"counters": {}, "timers": {}}


def test_timer_context():
    """Test success and error counting of timed blocks."""
    metrics = MetricsCollector()
    with TimerContext(metrics, "verify"):
        pass
    with pytest.raises(RuntimeError):
        with TimerContext(metrics, "verify"):
            raise RuntimeError("fail")

    counters = metrics.get_summary()["counters"]
    assert counters["verify.success"] == 1
    assert counters["verify.error"] == 1
    assert get_global_metrics() is get_global_metrics()
