from src.output.writer import ResultWriter

__all__ = ["ResultWriter"]
