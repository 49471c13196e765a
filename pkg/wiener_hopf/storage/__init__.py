from .report_storage import ReportStorage, complex_columns, numpy_handler, save_json

__all__ = ['ReportStorage', 'complex_columns', 'numpy_handler', 'save_json']
