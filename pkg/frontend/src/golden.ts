/* Writes the golden session exports used by the analysis toolkit's contract
 * tests.  Run via `npm run golden`; the files are checked in.
 */

import { mkdirSync, writeFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import { Session } from "./model.js";

const goldenDir = join(dirname(fileURLToPath(import.meta.url)), "..", "golden");

function basicSession(): Session {
  const s = new Session("golden_basic");
  for (const id of [
    "team_quality", "developer_skill", "management_effectiveness",
    "developer_motivation", "software_complexity", "quality_of_user_involvement",
    "effectiveness_of_internal_communication", "degree_of_external_uncertainty_and_change",
    "quality_assurance_effectiveness", "quality_of_software_structure",
  ]) {
    s.pickConstruct(id);
  }
  s.drawArrow("team_quality", "ses");
  s.assignStrength("team_quality", "ses", 3);
  s.assignStrength("other:ses", "ses", 2);
  s.drawArrow("developer_skill", "team_quality");
  s.assignStrength("developer_skill", "team_quality", 2);
  s.assignStrength("other:team_quality", "team_quality", 1);
  s.drawArrow("management_effectiveness", "team_quality");
  s.assignStrength("management_effectiveness", "team_quality", 2);
  s.drawArrow("management_effectiveness", "developer_motivation");
  s.assignStrength("management_effectiveness", "developer_motivation", 3);
  s.drawArrow("software_complexity", "developer_motivation");
  s.assignStrength("software_complexity", "developer_motivation", -2);
  s.assignStrength("other:developer_motivation", "developer_motivation", 2);
  s.drawArrow("developer_motivation", "ses");
  s.assignStrength("developer_motivation", "ses", 2);
  s.drawArrow("software_complexity", "ses");
  s.assignStrength("software_complexity", "ses", -3);
  s.drawArrow("quality_of_user_involvement", "ses");
  s.assignStrength("quality_of_user_involvement", "ses", 1);
  s.drawArrow("effectiveness_of_internal_communication", "team_quality");
  s.assignStrength("effectiveness_of_internal_communication", "team_quality", 2);
  s.drawArrow("degree_of_external_uncertainty_and_change", "ses");
  s.assignStrength("degree_of_external_uncertainty_and_change", "ses", -1);
  s.drawArrow("quality_assurance_effectiveness", "quality_of_software_structure");
  s.assignStrength("quality_assurance_effectiveness", "quality_of_software_structure", 2);
  s.assignStrength("other:quality_of_software_structure", "quality_of_software_structure", 1);
  s.drawArrow("quality_of_software_structure", "ses");
  s.assignStrength("quality_of_software_structure", "ses", 2);
  return s;
}

function deletedOtherSession(): Session {
  const s = new Session("golden_deleted_other");
  for (const id of ["team_quality", "developer_skill", "quality_of_system_specifications",
                    "comprehension_of_software_specifications", "financial_risk"]) {
    s.pickConstruct(id);
  }
  s.drawArrow("developer_skill", "team_quality");
  s.assignStrength("developer_skill", "team_quality", 3);
  // the participant judged team quality fully explained by developer skill
  s.removeOtherCard("team_quality");
  s.drawArrow("team_quality", "ses");
  s.assignStrength("team_quality", "ses", 3);
  s.assignStrength("other:ses", "ses", 1);
  s.drawArrow("quality_of_system_specifications", "comprehension_of_software_specifications");
  s.assignStrength("quality_of_system_specifications",
                   "comprehension_of_software_specifications", 2);
  s.assignStrength("other:comprehension_of_software_specifications",
                   "comprehension_of_software_specifications", 2);
  s.drawArrow("comprehension_of_software_specifications", "ses");
  s.assignStrength("comprehension_of_software_specifications", "ses", 2);
  s.drawArrow("financial_risk", "ses");
  s.assignStrength("financial_risk", "ses", -2);
  return s;
}

function customConstructSession(): Session {
  const s = new Session("golden_custom");
  for (const id of ["team_quality", "quality_of_user_involvement",
                    "degree_of_continuous_improvement", "use_of_open_source_software"]) {
    s.pickConstruct(id);
  }
  s.addCustomConstruct("time to market");
  s.drawArrow("custom:time_to_market", "ses");
  s.assignStrength("custom:time_to_market", "ses", 3);
  s.assignStrength("other:ses", "ses", 2);
  s.drawArrow("team_quality", "custom:time_to_market");
  s.assignStrength("team_quality", "custom:time_to_market", 2);
  s.assignStrength("other:custom:time_to_market", "custom:time_to_market", 1);
  s.drawArrow("quality_of_user_involvement", "ses");
  s.assignStrength("quality_of_user_involvement", "ses", 2);
  s.drawArrow("degree_of_continuous_improvement", "ses");
  s.assignStrength("degree_of_continuous_improvement", "ses", 1);
  s.drawArrow("use_of_open_source_software", "ses");
  s.assignStrength("use_of_open_source_software", "ses", 1);
  return s;
}

mkdirSync(goldenDir, { recursive: true });
for (const session of [basicSession(), deletedOtherSession(), customConstructSession()]) {
  const path = join(goldenDir, `${session.respondentId}.json`);
  writeFileSync(path, session.exportJson());
  console.log(`wrote ${path}`);
}
