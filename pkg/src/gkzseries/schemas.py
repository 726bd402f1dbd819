"""Request and response models for the service, plus exact converters.

Rationals travel as strings ("-5/2"), supports as 1-based sorted index
lists, series as ordered term records keyed by Gale coordinates. Parsing a
document back yields the identical series, so verification can run against
previously saved output.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field

from .errors import SeriesFormatError
from .exponents import FakeExponent, SupportClassification, SupportRecord
from .frobenius import ConditionCertificate
from .linalg import LatticeBasis, Vec, dot
from .problem import ProblemFile, format_rational, parse_rational
from .series import LogPolynomial, LogSeries
from .standard_pairs import StandardPair
from .toric import Binomial, GroebnerBasis
from .verifier import OperatorReport, ResidualReport


def _support_list(support) -> list[int]:
    return sorted(i + 1 for i in support)


def _rationals(vec) -> list[str]:
    return [format_rational(Fraction(q)) for q in vec]


class BinomialModel(BaseModel):
    plus: list[int]
    minus: list[int]
    direction: list[int]
    display: str


def binomial_model(g: Binomial) -> BinomialModel:
    return BinomialModel(plus=list(g.plus), minus=list(g.minus),
                         direction=list(g.direction), display=g.display())


class LatticeResponse(BaseModel):
    n: int
    d: int
    basis: list[list[int]]        # basis vectors, one per line
    dual_rows: list[list[int]]    # per-coordinate covectors on the Gale side
    homogeneity_covector: list[str]


class ToricResponse(BaseModel):
    generators: list[BinomialModel]
    saturated: bool


class GroebnerResponse(BaseModel):
    weight: list[str]
    tie_break: str
    elements: list[BinomialModel]
    initial_generators: list[list[int]]


class PairModel(BaseModel):
    a: list[int]
    face: list[int]
    display: str


def pair_model(p: StandardPair) -> PairModel:
    return PairModel(a=list(p.a), face=_support_list(p.sigma),
                     display=p.display())


class StandardPairsResponse(BaseModel):
    pairs: list[PairModel]
    count: int


class ExponentModel(BaseModel):
    v: list[str]
    weight: str
    negative_support: list[int]
    integer_positions: list[int]
    minimal_negative_support: Optional[str] = None
    minimal_witness: Optional[list[int]] = None
    smallest_weight_in_class: Optional[bool] = None
    source_pairs: list[str]


def exponent_model(e: FakeExponent, w: Vec) -> ExponentModel:
    return ExponentModel(
        v=_rationals(e.v),
        weight=format_rational(dot(w, e.v)),
        negative_support=_support_list(e.nsupp),
        integer_positions=_support_list(e.integer_support),
        minimal_negative_support=e.minimal,
        minimal_witness=list(e.minimal_witness) if e.minimal_witness else None,
        smallest_weight_in_class=e.smallest_weight_in_class,
        source_pairs=[p.display() for p in e.source_pairs],
    )


class FakeExponentsResponse(BaseModel):
    exponents: list[ExponentModel]
    count: int


class SupportRecordModel(BaseModel):
    support: list[int]
    witness: list[int]
    in_positive_cone: bool
    certificate: str
    cone_witness: Optional[list[int]] = None


def support_record_model(r: SupportRecord) -> SupportRecordModel:
    return SupportRecordModel(
        support=_support_list(r.support),
        witness=list(r.witness),
        in_positive_cone=r.in_positive_cone,
        certificate=r.certificate,
        cone_witness=list(r.cone_witness) if r.cone_witness else None,
    )


class ClassificationModel(BaseModel):
    v: list[str]
    records: list[SupportRecordModel]
    positive: list[list[int]]
    complement: list[list[int]]
    base_support: list[int]
    core_support: list[int]
    min_support_size: int
    min_crossing_size: Optional[int]
    derivative_bound: Optional[int]
    multiplicity_lower_bound: Optional[int]
    radius: int
    restricted: bool
    all_certified: bool
    warnings: list[str]


def classification_model(cls: SupportClassification, n: int, d: int
                         ) -> ClassificationModel:
    from .exponents import multiplicity_lower_bound
    ns_sorted = sorted(cls.ns, key=lambda s: (len(s), sorted(s)))
    nsc_sorted = sorted(cls.ns_complement, key=lambda s: (len(s), sorted(s)))
    return ClassificationModel(
        v=_rationals(cls.v),
        records=[support_record_model(r) for r in cls.records],
        positive=[_support_list(s) for s in ns_sorted],
        complement=[_support_list(s) for s in nsc_sorted],
        base_support=_support_list(cls.base_support),
        core_support=_support_list(cls.core_support),
        min_support_size=cls.min_support_size,
        min_crossing_size=cls.min_crossing_size,
        derivative_bound=cls.derivative_bound(),
        multiplicity_lower_bound=multiplicity_lower_bound(cls, n, d),
        radius=cls.radius,
        restricted=cls.restricted,
        all_certified=cls.all_certified,
        warnings=list(cls.warnings),
    )


class NsClassesResponse(BaseModel):
    classifications: list[ClassificationModel]


class LogTermModel(BaseModel):
    exponents: list[int]
    coefficient: str


class SeriesTermModel(BaseModel):
    u: list[int]
    exponent: list[str]
    weight: str
    log_poly: list[LogTermModel]


class SeriesDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")

    exponent: list[str]
    bindings: list[list[int]]
    basis: list[list[int]]
    weight: list[str]
    weight_cap: str
    radius: int
    complete: bool
    max_log_degree: int
    starting_monomial: Optional[str]
    term_count: int
    terms: list[SeriesTermModel]
    warnings: list[str]


def series_to_document(series: LogSeries) -> SeriesDocument:
    terms = []
    for x, poly in series.sorted_items():
        terms.append(SeriesTermModel(
            u=list(x),
            exponent=_rationals(series.exponent_of(x)),
            weight=format_rational(series.weight_of(x)),
            log_poly=[LogTermModel(exponents=list(e),
                                   coefficient=format_rational(c))
                      for e, c in poly.sorted_items()],
        ))
    relative_cap = series.weight_cap_abs - dot(series.w, series.v)
    return SeriesDocument(
        exponent=_rationals(series.v),
        bindings=[list(b) for b in series.bindings],
        basis=[list(col) for col in series.basis.columns],
        weight=_rationals(series.w),
        weight_cap=format_rational(relative_cap),
        radius=series.radius,
        complete=series.complete,
        max_log_degree=series.max_log_degree,
        starting_monomial=series.starting_monomial(),
        term_count=len(series.terms),
        terms=terms,
        warnings=list(series.warnings),
    )


def document_to_series(doc: SeriesDocument, basis: LatticeBasis) -> LogSeries:
    """Parse a document against the problem's basis; exact round trip."""
    if [list(col) for col in basis.columns] != doc.basis:
        raise SeriesFormatError(
            "series document was produced with a different kernel basis")
    v = tuple(parse_rational(q) for q in doc.exponent)
    w = tuple(parse_rational(q) for q in doc.weight)
    bindings = [tuple(b) for b in doc.bindings]
    nsyms = len(bindings)
    terms = {}
    for term in doc.terms:
        if len(term.u) != basis.k:
            raise SeriesFormatError("term coordinate length mismatch")
        poly = LogPolynomial(nsyms, {
            tuple(entry.exponents): parse_rational(entry.coefficient)
            for entry in term.log_poly})
        expected = tuple(a + b for a, b in
                         zip(v, basis.lattice_vector(term.u)))
        if tuple(parse_rational(q) for q in term.exponent) != expected:
            raise SeriesFormatError(
                f"term at {term.u} declares an exponent off its coset line")
        terms[tuple(term.u)] = poly
    cap_abs = dot(w, v) + parse_rational(doc.weight_cap)
    return LogSeries(v, basis, w, bindings, terms, cap_abs, doc.radius,
                     doc.complete, tuple(doc.warnings))


class CertificateEntryModel(BaseModel):
    supports: list[list[int]]
    value: str


def certificate_models(cert: ConditionCertificate) -> list[CertificateEntryModel]:
    return [CertificateEntryModel(**entry) for entry in cert.payload()]


class SeriesResponse(BaseModel):
    method: str
    exponent: list[str]
    parameters: dict
    series: SeriesDocument
    certificate: Optional[list[CertificateEntryModel]] = None


class OperatorReportModel(BaseModel):
    kind: str
    label: str
    passed: bool
    excluded_terms: int
    witness_exponent: Optional[list[str]] = None
    witness_poly: Optional[str] = None


def operator_report_model(r: OperatorReport) -> OperatorReportModel:
    return OperatorReportModel(
        kind=r.kind, label=r.label, passed=r.passed,
        excluded_terms=r.excluded_terms,
        witness_exponent=list(r.witness_exponent) if r.witness_exponent else None,
        witness_poly=r.witness_poly,
    )


class VerifyResponse(BaseModel):
    passed: bool
    margin: str
    certified_cap: str
    complete: bool
    operators: list[OperatorReportModel]
    warnings: list[str]


def verify_response(report: ResidualReport) -> VerifyResponse:
    return VerifyResponse(
        passed=report.passed,
        margin=format_rational(report.margin),
        certified_cap=format_rational(report.certified_cap),
        complete=report.complete,
        operators=[operator_report_model(r) for r in report.operators],
        warnings=list(report.warnings),
    )


class ArrangementResponse(BaseModel):
    svg: str
    window: int


class ErrorBody(BaseModel):
    code: str
    message: str
    detail: Optional[object] = None


class ErrorResponse(BaseModel):
    error: ErrorBody


# ---- requests ----


class BaseRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    problem: ProblemFile


class LatticeRequest(BaseRequest):
    pass


class ToricRequest(BaseRequest):
    pass


class GroebnerRequest(BaseRequest):
    pass


class StandardPairsRequest(BaseRequest):
    pass


class FakeExponentsRequest(BaseRequest):
    radius: Optional[int] = None


class NsClassesRequest(BaseRequest):
    exponent: Optional[list[int | str]] = None
    radius: Optional[int] = None
    restrict: Optional[list[list[int]]] = None


class PhiRequest(BaseRequest):
    exponent: Optional[list[int | str]] = None
    radius: Optional[int] = None
    weight_cap: Optional[int | str] = None
    allow_nonminimal: bool = False


class Frobenius1Request(BaseRequest):
    exponent: Optional[list[int | str]] = None
    b: Optional[list[int]] = None
    j: int = 0
    radius: Optional[int] = None
    weight_cap: Optional[int | str] = None
    s_degree: Optional[int] = None
    restrict: Optional[list[list[int]]] = None


class Frobenius1ComboRequest(BaseRequest):
    exponent: Optional[list[int | str]] = None
    bs: Optional[list[list[int]]] = None
    radius: Optional[int] = None
    weight_cap: Optional[int | str] = None
    s_degree: Optional[int] = None
    restrict: Optional[list[list[int]]] = None


class Frobenius2Request(BaseRequest):
    exponent: Optional[list[int | str]] = None
    bs: Optional[list[list[int]]] = None
    p: list[int]
    radius: Optional[int] = None
    weight_cap: Optional[int | str] = None
    s_degree: Optional[int] = None
    restrict: Optional[list[list[int]]] = None


class VerifyRequest(BaseRequest):
    series: SeriesDocument
    margin: Optional[int | str] = None


class ArrangementRequest(BaseRequest):
    exponent: Optional[list[int | str]] = None
    window: Optional[int] = None
