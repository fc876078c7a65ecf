/**
 * Every server route the UI touches, by schema id. The contract test checks
 * this table against schema/api.json, so any drift between the client and
 * the published API contract fails the build.
 */

export interface EndpointSpec {
  id: string;
  method: string;
  path: string; // template with {param} placeholders, as in the schema file
}

export const ENDPOINTS: EndpointSpec[] = [
  { id: "upload_corpus", method: "POST", path: "/api/corpora" },
  { id: "get_corpus", method: "GET", path: "/api/corpora/{corpus_id}" },
  { id: "submit_lda", method: "POST", path: "/api/lda" },
  { id: "submit_train", method: "POST", path: "/api/classifiers/train" },
  { id: "submit_predict", method: "POST", path: "/api/classifiers/{model_id}/predict" },
  { id: "get_job", method: "GET", path: "/api/jobs/{job_id}" },
  { id: "get_results", method: "GET", path: "/api/jobs/{job_id}/results" },
  { id: "get_result_artifact", method: "GET", path: "/api/jobs/{job_id}/results/{artifact_name}" },
  { id: "list_models", method: "GET", path: "/api/models" },
  { id: "download_model", method: "GET", path: "/api/models/{model_id}/download" },
];

export function endpointPath(id: string, params: Record<string, string> = {}): string {
  const spec = ENDPOINTS.find((e) => e.id === id);
  if (!spec) throw new Error(`unknown endpoint id: ${id}`);
  let path = spec.path;
  for (const [name, value] of Object.entries(params)) {
    path = path.replace(`{${name}}`, encodeURIComponent(value));
  }
  if (path.includes("{")) throw new Error(`unfilled parameter in ${path}`);
  return path;
}
