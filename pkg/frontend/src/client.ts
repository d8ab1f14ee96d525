/**
 * Thin typed client for the editing service. The fetch implementation is
 * injectable so tests can run against a fake or a locally spawned server.
 */

import type { Diagnostic, ModelBody, ModelEnvelope } from './model.js';

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ConflictError extends Error {
  constructor(public currentVersion: number) {
    super(`save conflict: server is at version ${currentVersion}`);
  }
}

export class ApiError extends Error {
  constructor(public status: number, message: string) {
    super(message);
  }
}

export class ApiClient {
  constructor(
    private baseUrl: string,
    private fetchImpl: FetchLike = (url, init) => fetch(url, init),
  ) {}

  private async json<T>(res: Response): Promise<T> {
    if (!res.ok) {
      const body = await res.text();
      throw new ApiError(res.status, body || res.statusText);
    }
    return res.json() as Promise<T>;
  }

  async listModels(): Promise<{ name: string; version: number }[]> {
    return this.json(await this.fetchImpl(`${this.baseUrl}/api/models`));
  }

  async loadModel(name: string): Promise<ModelEnvelope> {
    return this.json(await this.fetchImpl(`${this.baseUrl}/api/models/${name}`));
  }

  async saveModel(envelope: ModelEnvelope): Promise<number> {
    const res = await this.fetchImpl(`${this.baseUrl}/api/models/${envelope.name}`, {
      method: 'PUT',
      headers: { 'content-type': 'application/json' },
      body: JSON.stringify(envelope),
    });
    if (res.status === 409) {
      const body = (await res.json()) as { version: number };
      throw new ConflictError(body.version);
    }
    const body = await this.json<{ version: number }>(res);
    return body.version;
  }

  async validate(name: string, preview?: ModelBody): Promise<Diagnostic[]> {
    const res = await this.fetchImpl(`${this.baseUrl}/api/models/${name}/validate`, {
      method: 'POST',
      headers: { 'content-type': 'application/json' },
      body: preview ? JSON.stringify({ model: preview }) : undefined,
    });
    return this.json(res);
  }

  async compile(name: string, target: 'uml' | 'sql' | 'svg', preview?: ModelBody): Promise<string> {
    const res = await this.fetchImpl(
      `${this.baseUrl}/api/models/${name}/compile?target=${target}`,
      {
        method: 'POST',
        headers: { 'content-type': 'application/json' },
        body: preview ? JSON.stringify({ model: preview }) : undefined,
      },
    );
    if (res.status === 422) {
      const body = await res.text();
      throw new ApiError(422, body);
    }
    if (!res.ok) throw new ApiError(res.status, await res.text());
    return res.text();
  }
}
