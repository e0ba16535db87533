from services.report_service import ReportService
from services.sweep_service import SweepService, Task, TaskBatch

__all__ = ["ReportService", "SweepService", "Task", "TaskBatch"]
