"""stilo: corpus engineering and stylometric evaluation for literary translation.

Pipeline stages: normalize -> segment -> align -> score -> filter ->
dataset build, plus style-vector extraction and comparison. See the CLI in
stilo.cli for the wiring.
"""

__version__ = "0.1.0"

from stilo.errors import DataError, OracleError, StiloError

__all__ = ["DataError", "OracleError", "StiloError", "__version__"]
