from .logger import configure_logging
from .report_writer import OutputFormat, render_report, use_color, write_report
from .request_executor import RequestExecutor, format_duration
