# services/app_service.py

import logging
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from services.complex import ComplexDocument, DeltaComplex
from services.group_action import PermutationGroup
from services.homology import HomologyReport, parse_coefficients
from services.posets import FinitePoset, PosetDocument
from services.verify import TARGETS, ArtifactBuilder, SuiteResult, run_paper_suite
from utils.config import RunConfig
from utils.database import ArtifactCache

logger = logging.getLogger(__name__)


def _encode_complex(c: DeltaComplex) -> Dict[str, Any]:
    return c.to_document(include_labels=True).model_dump(mode="json")


def _decode_complex(data: Dict[str, Any]) -> DeltaComplex:
    return DeltaComplex.from_document(ComplexDocument.model_validate(data))


# Artifact kinds that are persisted, with their JSON encoders and decoders.
_CODECS: Dict[str, Tuple[Callable[[Any], Any], Callable[[Any], Any]]] = {
    "lattice": (
        lambda poset: poset.to_document().model_dump(mode="json"),
        lambda data: FinitePoset.from_document(PosetDocument.model_validate(data)),
    ),
    "complex": (_encode_complex, _decode_complex),
    "quotient": (_encode_complex, _decode_complex),
    "homology": (
        lambda report: report.model_dump(mode="json"),
        HomologyReport.model_validate,
    ),
}


class PipelineService(ArtifactBuilder):
    """Runs the CLI commands; artifacts are memoized in process and cached on disk by content hash."""

    def __init__(self, config: Optional[RunConfig] = None):
        self.config = config or RunConfig()
        super().__init__(max_simplices=self.config.max_simplices,
                         max_group_order=self.config.max_group_order)
        self.cache = ArtifactCache(self.config.cache_dir) if self.config.use_cache else None
        logger.info(f"PipelineService initialized (cache: {self.cache.db_path if self.cache else 'disabled'})")

    def _memoized(self, key: tuple, build: Callable[[], object]):
        codec = _CODECS.get(key[0])
        if codec is None or self.cache is None:
            return super()._memoized(key, build)
        encode, decode = codec
        kind, params = key[0], list(key[1:])

        def build_cached():
            payload = self.cache.get(kind, params)
            if payload is not None:
                logger.info(f"Cache hit for {kind} {params}")
                return decode(payload)
            artifact = build()
            self.cache.put(kind, params, encode(artifact))
            return artifact

        return super()._memoized(key, build_cached)

    def parse_group(self, generators: Optional[Sequence[str]], degree: int) -> Optional[PermutationGroup]:
        """Group generated by cycle strings such as "(1 2 3 4 5)"; None when no generator is given"""
        if not generators:
            return None
        return PermutationGroup.from_cycles(list(generators), degree, max_order=self.max_group_order)

    def _group_or_cyclic(self, generators: Optional[Sequence[str]], degree: int) -> PermutationGroup:
        return self.parse_group(generators, degree) or PermutationGroup.cyclic(degree)

    def lattice_document(self, kind: str, n: int) -> Dict[str, Any]:
        try:
            logger.info(f"Building {kind} lattice document for n={n}")
            return self.lattice(kind, n).to_document().model_dump(mode="json")
        except Exception as e:
            logger.error(f"Error building {kind} lattice for n={n}: {str(e)}", exc_info=True)
            raise

    def complex_document(self, kind: str, n: int) -> Dict[str, Any]:
        try:
            logger.info(f"Building order complex document of the {kind} lattice for n={n}")
            return _encode_complex(self.order_complex(kind, n))
        except Exception as e:
            logger.error(f"Error building order complex of the {kind} lattice for n={n}: {str(e)}", exc_info=True)
            raise

    def quotient_document(self, kind: str, n: int, generators: Optional[Sequence[str]] = None) -> Dict[str, Any]:
        try:
            group = self._group_or_cyclic(generators, n)
            logger.info(f"Building quotient of the {kind} order complex by {group.describe()}")
            document = _encode_complex(self.quotient(kind, n, group))
            document["group"] = group.to_document().model_dump(mode="json")
            return document
        except Exception as e:
            logger.error(f"Error building quotient of the {kind} order complex: {str(e)}", exc_info=True)
            raise

    def compute_homology(self,
                         kind: str,
                         n: int,
                         generators: Optional[Sequence[str]] = None,
                         coefficients: str = "Z",
                         quotient: bool = False,
                         max_dim: Optional[int] = None) -> HomologyReport:
        """Homology of the order complex, or of its quotient when quotient is set or generators are given"""
        try:
            fields = parse_coefficients(coefficients)
            group = self._group_or_cyclic(generators, n) if quotient or generators else None
            target = "order complex" if group is None else f"quotient by {group.describe()}"
            logger.info(f"Computing homology of the {kind} {target} for n={n} over {', '.join(fields)}")
            return self.homology(kind, n, group, fields, max_dim=max_dim)
        except Exception as e:
            logger.error(f"Error computing homology: {str(e)}", exc_info=True)
            raise

    def run_verification(self,
                         p: int,
                         generators: Optional[Sequence[str]] = None,
                         targets: Optional[List[str]] = None) -> SuiteResult:
        targets = targets or list(TARGETS)
        try:
            group = self.parse_group(generators, p)
            return run_paper_suite(
                p,
                include_partition="partition" in targets,
                include_subset="subset" in targets,
                group=group,
                artifacts=self,
                time_budget_s=self.config.time_budget_s,
                record_timings=self.config.record_timings,
            )
        except Exception as e:
            logger.error(f"Error in verification suite: {str(e)}", exc_info=True)
            raise

    def close(self) -> None:
        if self.cache is not None:
            self.cache.close()
