"""Canonical construct vocabulary.

The 28 core constructs popularly believed to influence software-engineering
success, plus the reserved top-level dependent node ``ses``.  Construct ids
are stable lowercase tokens; custom (respondent-added) constructs carry a
``custom:`` prefix so they can never collide with canonical ids.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

SES_ID = "ses"
SES_LABEL = "Software Engineering Success"
CUSTOM_PREFIX = "custom:"


@dataclass(frozen=True)
class Construct:
    id: str
    label: str
    kind: str  # "canonical" | "custom"


_CANONICAL_ENTRIES = (
    ("appropriateness_of_methodology", "appropriateness of methodology"),
    ("appropriateness_of_programming_paradigm", "appropriateness of programming paradigm"),
    ("comprehension_of_software_specifications", "comprehension of software specifications"),
    ("consistency_between_specifications", "consistency between specifications"),
    ("cost_effort_estimation_accuracy", "cost/effort estimation accuracy"),
    ("degree_of_automation", "degree of automation"),
    ("degree_of_continuous_improvement", "degree of continuous improvement"),
    ("degree_of_external_uncertainty_and_change", "degree of external uncertainty and change"),
    ("degree_of_in_house_reuse", "degree of in-house reuse"),
    ("developer_motivation", "developer motivation"),
    ("developer_skill", "developer skill level"),
    ("developer_well_being", "developer well-being"),
    ("effectiveness_of_internal_communication", "effectiveness of internal communication"),
    ("financial_risk", "financial risk"),
    ("geographic_distribution_of_work", "geographic distribution of work"),
    ("management_effectiveness", "management effectiveness"),
    ("measurability_of_software_system", "measurability of software system"),
    ("quality_assurance_effectiveness", "quality assurance effectiveness"),
    ("quality_of_software_requirements_documentation", "quality of software requirements documentation"),
    ("quality_of_software_structure", "quality of software structure"),
    ("quality_of_system_specifications", "quality of system specifications"),
    ("quality_of_user_involvement", "quality of user involvement"),
    ("software_complexity", "software complexity"),
    ("team_quality", "team quality"),
    ("use_of_cots", "use of COTS"),
    ("use_of_fault_tolerance_mechanisms", "use of fault-tolerance mechanisms"),
    ("use_of_formal_methods", "use of formal methods"),
    ("use_of_open_source_software", "use of open source software"),
)

CANONICAL_CONSTRUCTS: tuple[Construct, ...] = tuple(
    Construct(cid, label, "canonical") for cid, label in _CANONICAL_ENTRIES
)

#: Fixed feature/column ordering used throughout the toolkit.
CANONICAL_IDS: tuple[str, ...] = tuple(c.id for c in CANONICAL_CONSTRUCTS)
CANONICAL_ID_SET = frozenset(CANONICAL_IDS)

_LABELS = {c.id: c.label for c in CANONICAL_CONSTRUCTS}
_LABELS[SES_ID] = SES_LABEL


def is_custom_id(node_id: str) -> bool:
    return node_id.startswith(CUSTOM_PREFIX)


def label_for(node_id: str) -> str:
    """Display label for a node id; custom ids fall back to their suffix."""
    if node_id in _LABELS:
        return _LABELS[node_id]
    if is_custom_id(node_id):
        return node_id[len(CUSTOM_PREFIX):].replace("_", " ")
    return node_id


def vocabulary_json() -> str:
    """The canonical vocabulary as JSON, for bundling into other components."""
    payload = {
        "ses": {"id": SES_ID, "label": SES_LABEL},
        "constructs": [{"id": c.id, "label": c.label} for c in CANONICAL_CONSTRUCTS],
    }
    return json.dumps(payload, indent=2) + "\n"


if __name__ == "__main__":
    print(vocabulary_json(), end="")
