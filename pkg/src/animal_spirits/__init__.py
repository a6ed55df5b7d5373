"""Animal spirits, inflation extrapolators and central-bank speech sentiment."""

__version__ = "0.1.0"
