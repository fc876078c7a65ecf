/**
 * Client-side topic labeling worksheet: two reviewers assign a frame label
 * to each discovered topic; agreement is simple percent agreement. Edits
 * never touch server-side artifacts; the worksheet exports to CSV so the
 * researcher can build training data from it.
 */

import { toCsv } from "./csv.js";

export interface WorksheetRow {
  topicId: number;
  keywords: string[];
  reviewer1: string;
  reviewer2: string;
}

export function buildWorksheet(topics: { topicId: number; keywords: string[] }[]): WorksheetRow[] {
  return topics.map((t) => ({
    topicId: t.topicId,
    keywords: t.keywords,
    reviewer1: "",
    reviewer2: "",
  }));
}

export function setLabel(rows: WorksheetRow[], topicId: number,
                         reviewer: 1 | 2, label: string): WorksheetRow[] {
  return rows.map((row) =>
    row.topicId === topicId
      ? { ...row, [reviewer === 1 ? "reviewer1" : "reviewer2"]: label }
      : row,
  );
}

/**
 * Percent agreement over topics where both reviewers entered a label;
 * null when no topic has both labels yet.
 */
export function percentAgreement(rows: WorksheetRow[]): number | null {
  const scored = rows.filter((r) => r.reviewer1.trim() && r.reviewer2.trim());
  if (scored.length === 0) return null;
  const agreed = scored.filter(
    (r) => r.reviewer1.trim() === r.reviewer2.trim(),
  ).length;
  return (agreed / scored.length) * 100;
}

export function worksheetToCsv(rows: WorksheetRow[]): string {
  const table = [["topic_id", "reviewer_1", "reviewer_2"]];
  for (const row of rows) {
    table.push([String(row.topicId), row.reviewer1, row.reviewer2]);
  }
  return toCsv(table);
}
