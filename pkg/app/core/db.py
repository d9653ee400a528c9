"""DB connection and helpers for the background jobs of the cubic-wave-periodic service."""

from typing import Any

from sqlalchemy import Column, String, Text, create_engine, select, update
from sqlalchemy.engine import Engine
from sqlalchemy.orm import Session, declarative_base, sessionmaker

from app.core.utils import utcnow_iso

Base = declarative_base()

PENDING = "pending"
RUNNING = "in_progress"
COMPLETED = "completed"
ERROR = "error"


class Job(Base):
    """A background solve or bound-suite run; params and result are JSON text."""

    __tablename__ = "jobs"
    id = Column(String, primary_key=True)
    kind = Column(String, nullable=False)
    status = Column(String, nullable=False)
    created_at = Column(String, nullable=False)
    completed_at = Column(String, nullable=True)
    params = Column(Text, nullable=False)
    result = Column(Text, nullable=True)
    error = Column(Text, nullable=True)


def get_engine() -> Engine:
    """Create a SQLAlchemy engine using the configured database URL."""
    from app.core.settings import get_settings

    url = get_settings().database_url
    connect_args = {"check_same_thread": False} if url.startswith("sqlite") else {}
    return create_engine(url, connect_args=connect_args)


engine = get_engine()
SessionLocal = sessionmaker(autocommit=False, autoflush=False, bind=engine)


def init_db() -> None:
    """Create the jobs table if it does not exist."""
    Base.metadata.create_all(engine)


def get_db() -> "DBHelper":
    """Get a DBHelper instance using a SQLAlchemy session."""
    session = SessionLocal()
    return DBHelper(session)


class DBHelper:
    """Helper class for job bookkeeping using SQLAlchemy."""

    def __init__(self, session: Session) -> None:
        """Initialize the DBHelper with a SQLAlchemy session."""
        self.session = session

    def create_job(self, job_id: str, kind: str, params: str) -> None:
        """Insert a pending job."""
        self.session.add(Job(id=job_id, kind=kind, status=PENDING, created_at=utcnow_iso(), params=params))
        self.session.commit()

    def get_job_status(self, job_id: str) -> dict[str, Any] | None:
        """Retrieve the status and metadata for a job by its ID."""
        stmt = select(Job.kind, Job.status, Job.created_at, Job.completed_at, Job.error).where(Job.id == job_id)
        result = self.session.execute(stmt).first()
        if not result:
            return None
        return {
            "kind": result.kind,
            "status": result.status,
            "created_at": result.created_at,
            "completed_at": result.completed_at,
            "error": result.error,
        }

    def get_job_result(self, job_id: str) -> str | None:
        """The stored artifact of a completed job, or None."""
        stmt = select(Job.result).where(Job.id == job_id, Job.status == COMPLETED)
        result = self.session.execute(stmt).first()
        if not result:
            return None
        return result.result

    def _set(self, job_id: str, **values: str | None) -> None:
        self.session.execute(update(Job).where(Job.id == job_id).values(**values))
        self.session.commit()

    def mark_running(self, job_id: str) -> None:
        """Flag a job as started."""
        self._set(job_id, status=RUNNING)

    def mark_completed(self, job_id: str, result: str) -> None:
        """Store the artifact and close the job."""
        self._set(job_id, status=COMPLETED, completed_at=utcnow_iso(), result=result)

    def mark_error(self, job_id: str, error: str) -> None:
        """Record the failure message and close the job."""
        self._set(job_id, status=ERROR, completed_at=utcnow_iso(), error=error)

    def close(self) -> None:
        """Close the SQLAlchemy session."""
        self.session.close()
