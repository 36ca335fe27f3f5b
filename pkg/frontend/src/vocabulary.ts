// Generated from the toolkit vocabulary (python3 -m cogmap.vocabulary).
// Do not edit by hand; regenerate with: npm run gen:vocab

export const VOCABULARY = {
  "ses": {
    "id": "ses",
    "label": "Software Engineering Success"
  },
  "constructs": [
    {
      "id": "appropriateness_of_methodology",
      "label": "appropriateness of methodology"
    },
    {
      "id": "appropriateness_of_programming_paradigm",
      "label": "appropriateness of programming paradigm"
    },
    {
      "id": "comprehension_of_software_specifications",
      "label": "comprehension of software specifications"
    },
    {
      "id": "consistency_between_specifications",
      "label": "consistency between specifications"
    },
    {
      "id": "cost_effort_estimation_accuracy",
      "label": "cost/effort estimation accuracy"
    },
    {
      "id": "degree_of_automation",
      "label": "degree of automation"
    },
    {
      "id": "degree_of_continuous_improvement",
      "label": "degree of continuous improvement"
    },
    {
      "id": "degree_of_external_uncertainty_and_change",
      "label": "degree of external uncertainty and change"
    },
    {
      "id": "degree_of_in_house_reuse",
      "label": "degree of in-house reuse"
    },
    {
      "id": "developer_motivation",
      "label": "developer motivation"
    },
    {
      "id": "developer_skill",
      "label": "developer skill level"
    },
    {
      "id": "developer_well_being",
      "label": "developer well-being"
    },
    {
      "id": "effectiveness_of_internal_communication",
      "label": "effectiveness of internal communication"
    },
    {
      "id": "financial_risk",
      "label": "financial risk"
    },
    {
      "id": "geographic_distribution_of_work",
      "label": "geographic distribution of work"
    },
    {
      "id": "management_effectiveness",
      "label": "management effectiveness"
    },
    {
      "id": "measurability_of_software_system",
      "label": "measurability of software system"
    },
    {
      "id": "quality_assurance_effectiveness",
      "label": "quality assurance effectiveness"
    },
    {
      "id": "quality_of_software_requirements_documentation",
      "label": "quality of software requirements documentation"
    },
    {
      "id": "quality_of_software_structure",
      "label": "quality of software structure"
    },
    {
      "id": "quality_of_system_specifications",
      "label": "quality of system specifications"
    },
    {
      "id": "quality_of_user_involvement",
      "label": "quality of user involvement"
    },
    {
      "id": "software_complexity",
      "label": "software complexity"
    },
    {
      "id": "team_quality",
      "label": "team quality"
    },
    {
      "id": "use_of_cots",
      "label": "use of COTS"
    },
    {
      "id": "use_of_fault_tolerance_mechanisms",
      "label": "use of fault-tolerance mechanisms"
    },
    {
      "id": "use_of_formal_methods",
      "label": "use of formal methods"
    },
    {
      "id": "use_of_open_source_software",
      "label": "use of open source software"
    }
  ]
} as const;

export type ConstructEntry = { readonly id: string; readonly label: string };
export const CONSTRUCTS: readonly ConstructEntry[] = VOCABULARY.constructs;
export const SES_ID = VOCABULARY.ses.id;
export const SES_LABEL = VOCABULARY.ses.label;
