// Debounced, cancellable fetch scheduling: trailing-edge debounce caps the
// request rate while a slider drags, and a generation counter plus
// AbortController make the last response win.

export class Debouncer {
  private timer: ReturnType<typeof setTimeout> | null = null;

  constructor(readonly waitMs: number) {}

  schedule(fn: () => void): void {
    if (this.timer !== null) clearTimeout(this.timer);
    this.timer = setTimeout(() => {
      this.timer = null;
      fn();
    }, this.waitMs);
  }

  /** Run a pending call immediately (used by tests and on commit). */
  flush(fn?: () => void): void {
    if (this.timer !== null) {
      clearTimeout(this.timer);
      this.timer = null;
    }
    fn?.();
  }
}

export class LatestOnly {
  private generation = 0;
  private controller: AbortController | null = null;

  /** Start a request, aborting any in-flight one; stale results resolve null. */
  async run<T>(fn: (signal: AbortSignal) => Promise<T>): Promise<T | null> {
    const gen = ++this.generation;
    this.controller?.abort();
    this.controller = new AbortController();
    try {
      const result = await fn(this.controller.signal);
      return gen === this.generation ? result : null;
    } catch (err) {
      if ((err as { name?: string }).name === "AbortError") return null;
      if (gen !== this.generation) return null;
      throw err;
    }
  }
}
