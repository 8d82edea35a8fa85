import hashlib
import json
import logging
import os
from datetime import datetime, timezone
from typing import Any, Optional

from sqlalchemy import Column, DateTime, Integer, String, Text, create_engine
from sqlalchemy.orm import declarative_base, sessionmaker

logger = logging.getLogger(__name__)

# Bump when any cached document format changes; old rows are then never hit.
FORMAT_VERSION = 1

# Create the base class
Base = declarative_base()


def _utcnow() -> datetime:
    return datetime.now(timezone.utc)


class Artifact(Base):
    __tablename__ = 'artifacts'

    id = Column(Integer, primary_key=True)
    key = Column(String(64), unique=True, index=True, nullable=False)
    kind = Column(String(50), nullable=False)
    params = Column(Text, nullable=False)
    payload = Column(Text, nullable=False)
    created = Column(DateTime, default=_utcnow)


def content_key(params: Any) -> str:
    """SHA-256 of the canonical JSON of the construction parameters plus the format version"""
    canonical = json.dumps({"params": params, "version": FORMAT_VERSION}, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


class ArtifactCache:
    """On-disk cache of constructed posets, complexes and homology reports."""

    def __init__(self, cache_dir: str = ".nervelab_cache", db_name: str = "artifacts.db"):
        os.makedirs(cache_dir, exist_ok=True)
        self.db_path = os.path.join(cache_dir, db_name)
        self.engine = create_engine(f'sqlite:///{self.db_path}')
        Base.metadata.create_all(self.engine)
        Session = sessionmaker(bind=self.engine)
        self.session = Session()
        logger.debug(f"Artifact cache opened at {self.db_path}")

    def get(self, kind: str, params: Any) -> Optional[Any]:
        """Return the cached JSON payload for (kind, params), or None"""
        row = self.session.query(Artifact).filter_by(key=content_key([kind, params])).first()
        if row is None:
            return None
        return json.loads(row.payload)

    def put(self, kind: str, params: Any, payload: Any) -> None:
        """Store a JSON payload; an existing entry for the same key is replaced"""
        key = content_key([kind, params])
        try:
            row = self.session.query(Artifact).filter_by(key=key).first()
            if row is None:
                row = Artifact(key=key, kind=kind, params=json.dumps(params, sort_keys=True))
                self.session.add(row)
            row.payload = json.dumps(payload, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
            self.session.commit()
        except Exception as e:
            self.session.rollback()
            raise e

    def count(self, kind: Optional[str] = None) -> int:
        query = self.session.query(Artifact)
        if kind is not None:
            query = query.filter_by(kind=kind)
        return query.count()

    def clear(self) -> int:
        """Delete every cached artifact"""
        try:
            deleted = self.session.query(Artifact).delete()
            self.session.commit()
            return deleted
        except Exception as e:
            self.session.rollback()
            raise e

    def close(self) -> None:
        self.session.close()
        self.engine.dispose()
