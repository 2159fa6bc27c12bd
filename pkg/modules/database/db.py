import sqlite3
from contextlib import contextmanager
from typing import Generator, Optional

import config
from .models import create_tables


@contextmanager
def get_connection(path: Optional[str] = None) -> Generator[sqlite3.Connection, None, None]:
  """
  Context manager that returns a SQLite connection to the run ledger.
  Ensures tables exist before use.
  """
  conn = sqlite3.connect(path or config.LEDGER_PATH)
  try:
    create_tables(conn)
    yield conn
  finally:
    conn.close()
